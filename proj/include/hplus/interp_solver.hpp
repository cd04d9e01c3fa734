#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "hplus/boundary_measure.hpp"
#include "hplus/density_classifier.hpp"

namespace hplus {

struct InterpolationProblem {
    PointSequence seq;
    std::vector<double> values;
    double epsilon = 1.0;
    double tolerance = 1e-8;  // relative, per node

    /// Throws InputError on length mismatch, nonpositive values or a tolerance outside (0, 1e-3].
    void validate() const;
};

struct CompatibilityResult {
    bool ok = true;
    std::size_t first = 0;
    std::size_t second = 0;
    /// max over pairs of |log2 w_n - log2 w_m| / (epsilon beta(z_n, z_m)); ok means at most 1.
    double worst_ratio = 0.0;
};

CompatibilityResult check_compatibility(const InterpolationProblem& p);

/// w_n = 2^{epsilon L(n)} with L(n) = min_m (c_m + beta(z_n, z_m)) and seeded uniform offsets c_m.
std::vector<double> generate_compatible_values(const PointSequence& seq, double epsilon, std::uint64_t seed);

enum class Feasibility { feasible, infeasible };

struct InterpolationResult {
    Feasibility status = Feasibility::infeasible;
    std::optional<BoundaryMeasure> measure;
    /// Farkas vector scaled to max |x_n| = 1: <x, w> > 0 and x . (2pi P_{z_n}(theta_g))_n <= 0 on the grid.
    std::vector<double> certificate;
    std::vector<bool> in_t;          // certificate sign pattern, x_n >= 0
    std::vector<double> residuals;   // |u(z_n) - w_n| / w_n from an independent evaluation
    double objective = 0.0;          // minimal sum of relative residuals on the grid
    std::size_t grid_size = 0;
    bool exact = false;              // LP optimum certified in rational arithmetic
};

/// Matrix (2pi P_{z_n}(theta_g)) stored column-major, one column per grid angle.
std::shared_ptr<const std::vector<double>> kernel_matrix(const PointSequence& seq, const Grid& grid);

/// The grid spec with every node of the sequence added to its focus list.
GridSpec grid_for(const PointSequence& seq, const GridSpec& spec);

InterpolationResult solve_direct(const InterpolationProblem& p, const GridSpec& spec = {});

struct PartitionResult {
    bool feasible = true;
    std::optional<std::uint32_t> failing_mask;  // bit n set means node n is in T
    std::size_t partitions_solved = 0;
};

inline constexpr std::size_t kPartitionNodeCap = 20;

/// Throws InputError above kPartitionNodeCap nodes.
PartitionResult solve_by_partitions(const InterpolationProblem& p, const GridSpec& spec = {});

/// One-sided feasibility: u(z_n) >= w_n for n in T, u(z_n) <= w_n otherwise.
bool one_sided_feasible(const InterpolationProblem& p, const Grid& grid,
                        const std::shared_ptr<const std::vector<double>>& kernel, std::uint32_t mask);

struct ProfilePoint {
    double epsilon = 0.0;
    int feasible = 0;
    int trials = 0;
    double rate() const { return trials ? static_cast<double>(feasible) / trials : 0.0; }
};

std::vector<ProfilePoint> epsilon_profile(const PointSequence& seq, const GridSpec& spec, int trials,
                                          const std::vector<double>& eps_grid, std::uint64_t seed);

}  // namespace hplus
