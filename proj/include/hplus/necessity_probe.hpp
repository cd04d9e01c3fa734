#pragma once

#include <cstddef>
#include <vector>

#include "hplus/boundary_measure.hpp"
#include "hplus/interp_solver.hpp"

namespace hplus {

struct RadialProjectionEstimate {
    double lambda = 2.0;
    double measure = 0.0;  // (2pi / ray_count) * number of flagged rays
    int ray_count = 8192;
    int radial_samples = 256;
};

/// Depth of the i-th radial sample, i = 1..radial: 10^{-8 i / radial}. Doubling
/// radial keeps every earlier sample bit for bit.
double radial_sample_depth(int i, int radial);

/// Length of the radial projection of {u / u(0) > lambda}, sampled on `rays`
/// uniform radii at `radial` geometric depths. Throws InputError unless
/// lambda > 1, the mass is positive and rays, radial >= 1.
RadialProjectionEstimate radial_projection_measure(const BoundaryMeasure& mu, double lambda, int rays = 8192,
                                                   int radial = 256);

/// Same sampling for several thresholds at once; one pass over the rays.
std::vector<RadialProjectionEstimate> radial_projection_profile(const BoundaryMeasure& mu,
                                                                const std::vector<double>& lambdas, int rays = 8192,
                                                                int radial = 256);

struct NecessityReport {
    std::size_t base = 0;          // node moved to the origin
    double epsilon = 0.0;
    std::vector<double> values;    // 2^{epsilon beta(z_k, z_base)}
    InterpolationResult solve;
    bool feasible = false;
    std::vector<int> shell_counts;  // #{k : j <= beta(z_k, z_base) < j + 1}
    double fitted_c = 0.0;          // max_j #A(j) / 2^{(1 - epsilon) j}
    double c_bound = 2.0;
    bool bound_holds = false;       // feasible and fitted_c <= c_bound
};

/// Extremal values from the node `base`, solved directly. Shell counts are
/// reported either way; the bound is only meaningful on feasible problems.
NecessityReport necessity_replay(const PointSequence& seq, double epsilon, std::size_t base = 0,
                                 const GridSpec& spec = {}, double c_bound = 2.0);

}  // namespace hplus
