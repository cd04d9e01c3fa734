#pragma once

#include <cstdint>
#include <vector>

#include "hplus/boundary_measure.hpp"
#include "hplus/density_classifier.hpp"

namespace hplus {

struct ConstructionParams {
    double delta = 0.2;
    double m0 = 1.0;      // power of two from fit_m0
    double gamma = 0.1;   // radial shift factor for the points z_n^gamma(k)
    int cap_n = 1;        // the distance threshold N
    double eta = 0.01;
    double lambda = 0.008;

    // Inputs and derived constants, kept for reports.
    DensityConstants constants;
    double c_m0 = 0.0;        // C(M0)
    double k_m0 = 0.0;        // K(M0)
    double stolz_count = 0;   // C4, measured on the sequence
    double shift_bound = 0;   // majorant of the shifted-depth sum, must be <= lambda
    double near_far_bound = 0;  // majorant of parts (A) + (B) of the tail, must be <= delta/3
    double stolz_bound = 0;     // majorant of part (C), must be <= delta/3

    /// alpha + C(M0) gamma < 1 and eta < min((1 - alpha)/2, gamma/(2 C(M0))).
    bool admissible() const;
};

/// Smallest power of two M0 >= 1 with omega(z_k, M0 I_k) >= 1 - delta/100 for every k.
double fit_m0(const PointSequence& seq, double delta);

struct ShiftedPoint {
    std::size_t owner = 0;  // k
    std::size_t index = 0;  // n
    DiscPoint point;
    bool clamped = false;   // the requested shift would pass the origin; the origin is returned
};

/// The point on the radius through z_n, closer to the origin, at distance gamma * beta(z_k, z_n) from z_n.
ShiftedPoint shifted_point(const DiscPoint& zk, const DiscPoint& zn, double gamma);

/// Throws PreconditionError unless seq satisfies condition (a) with the constants.
ConstructionParams choose_params(const PointSequence& seq, const DensityConstants& constants, double delta);

/// Max over n and j >= 0 of the number of z_k in the Stolz angle at Arg z_n with
/// |z_k| < |z_n| and j <= beta(z_k, z_n) <= j + 1.
double stolz_layer_count(const PointSequence& seq, double m0);

struct ESets {
    std::vector<ArcSet> sets;
    std::vector<double> coverage;     // omega(z_k, E_k)
    std::vector<double> shifted_sum;  // sum over B(k) of (1 - |z_n^gamma(k)|) / (1 - |z_k|)
};

/// E_k = M0 I_k minus the arcs I(z_n^gamma(k)) over z_n in B(k). With enforce set,
/// throws ConstructionError when some omega(z_k, E_k) < 1 - delta/10.
ESets build_e_sets(const PointSequence& seq, const ConstructionParams& params, bool enforce = true);

struct GnFamily {
    ConstructionParams params;
    std::vector<ArcSet> g;
    std::vector<ArcSet> e;
    std::vector<std::vector<std::size_t>> near;  // A(n): indices k with beta(z_k, z_n) <= N
    std::vector<std::size_t> order;              // processing order, 1 - |z| decreasing
};

/// Processing order: 1 - |z| decreasing, then Arg ascending, then input index.
std::vector<std::size_t> construction_order(const PointSequence& seq);

GnFamily build_gn(const PointSequence& seq, const ConstructionParams& params, bool enforce = true);

struct EstimateReport {
    std::vector<double> cover_margin;  // omega(z_n, union over A(n) of G_k) - (1 - delta)
    std::vector<double> tail_sum;      // sum over k outside A(n) of 2^{eta beta} omega(z_n, G_k)
    bool disjoint = true;              // exact pairwise check
    bool nested = true;                // G_n within E_n within M0 I_n, exact
    bool holds(double delta) const;
};

EstimateReport verify_estimates(const GnFamily& fam, const PointSequence& seq);

struct HInftyResult {
    Grid grid;
    std::vector<double> h;  // boundary values on the grid cells, in [-1, 1]
    double level = 0.0;     // gamma: h(z_n) >= level on T, <= -level on S
    std::vector<double> at_nodes;  // h(z_n), evaluated exactly for the piecewise-constant h
    bool resolved = true;   // level above the tolerance
};

/// Bounded harmonic separation of T (bit n of mask set) from S, by LP over cell values of h.
HInftyResult solve_hinfty_partition(const PointSequence& seq, std::uint32_t mask, const GridSpec& spec = {},
                                    double tolerance = 1e-8);

struct CellPiece {
    std::size_t cell = 0;
    double lo = 0.0;
    double hi = 0.0;
};

/// Intersection of an arc set with the grid cells, as real-angle pieces.
std::vector<CellPiece> pieces_in_cells(const ArcSet& set, const Grid& grid);

struct AssembledU {
    BoundaryMeasure measure;
    std::vector<double> at_nodes;         // u(z_n), summed over all k
    std::vector<double> at_nodes_t_only;  // the same sum restricted to k in T
    std::vector<bool> satisfied;          // u >= w on T, u <= w on S
    bool all_satisfied = true;
};

/// u = sum_k w_k (1 + h) 1_{G_k} dtheta / 2pi; atoms sit at grid angles with the
/// mass of each cell piece, and node values are computed exactly from the pieces.
AssembledU assemble_u(const PointSequence& seq, const std::vector<double>& values, const GnFamily& fam,
                      const HInftyResult& h, std::uint32_t mask);

}  // namespace hplus
