#include "hplus/boundary_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hplus {

BoundaryMeasure::BoundaryMeasure(std::vector<Atom> atoms) {
    for (auto& a : atoms) {
        if (!(a.mass >= 0.0) || !std::isfinite(a.mass)) throw std::invalid_argument("atom mass must be finite and >= 0");
        a.angle = normalize_angle(a.angle);
    }
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.angle < b.angle; });
    for (const auto& a : atoms) {
        if (a.mass == 0.0) continue;
        if (!atoms_.empty() && atoms_.back().angle == a.angle) {
            atoms_.back().mass += a.mass;
        } else {
            atoms_.push_back(a);
        }
    }
}

double BoundaryMeasure::total_mass() const {
    double total = 0.0;
    for (const auto& a : atoms_) total += a.mass;
    return total;
}

BoundaryMeasure BoundaryMeasure::scaled(double factor) const {
    BoundaryMeasure out = *this;
    for (auto& a : out.atoms_) a.mass *= factor;
    return out;
}

double poisson_kernel(const DiscPoint& z, double angle) {
    const double s = z.depth();
    const double h = std::sin(0.5 * (angle - z.arg()));
    return z.one_minus_mod_sq() / (s * s + 4.0 * z.modulus() * h * h) / kTwoPi;
}

double poisson_integral(const BoundaryMeasure& mu, const DiscPoint& z) {
    const double s = z.depth();
    const double num = z.one_minus_mod_sq();
    const double four_r = 4.0 * z.modulus();
    double total = 0.0;
    for (const auto& a : mu.atoms()) {
        const double h = std::sin(0.5 * (a.angle - z.arg()));
        total += a.mass * num / (s * s + four_r * h * h);
    }
    return total;
}

double harmonic_measure_interval(const DiscPoint& z, double lo, double hi) {
    if (z.is_origin()) return (hi - lo) / kTwoPi;
    const Automorphism tau = Automorphism::to_origin(z);
    return (tau.boundary_lift(hi) - tau.boundary_lift(lo)) / kTwoPi;
}

double harmonic_measure_arc(const DiscPoint& z, const ArcSet& set) {
    if (set.is_full()) return 1.0;
    double total = 0.0;
    for (const auto& piece : set.intervals()) total += harmonic_measure_interval(z, piece.lo, piece.hi);
    return std::clamp(total, 0.0, 1.0);
}

double harnack_check(const BoundaryMeasure& mu, const std::vector<std::pair<DiscPoint, DiscPoint>>& pairs) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& [z, w] : pairs) {
        const double gap = std::abs(std::log2(poisson_integral(mu, z)) - std::log2(poisson_integral(mu, w)));
        worst = std::max(worst, gap - hyperbolic_distance(z, w));
    }
    return worst;
}

Grid build_grid(const GridSpec& spec) {
    if (spec.resolution < 16) throw std::invalid_argument("grid resolution must be at least 16");
    if (spec.refinement < 0) throw std::invalid_argument("grid refinement must be nonnegative");

    std::vector<double> angles;
    angles.reserve(static_cast<std::size_t>(spec.resolution) + spec.focus.size() * spec.refinement);
    for (int g = 0; g < spec.resolution; ++g) angles.push_back(kTwoPi * g / spec.resolution);
    // Geometric offsets within the base arc, so deep points see atoms at their own scale.
    for (const auto& z : spec.focus) {
        const double center = z.arg();
        const double half = kPi * z.depth();
        for (int i = 0; i < spec.refinement / 2; ++i) {
            const double off = half * std::exp2(-0.5 * i);
            angles.push_back(normalize_angle(center + off));
            angles.push_back(normalize_angle(center - off));
        }
    }
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end()), angles.end());

    Grid grid;
    const std::size_t n = angles.size();
    grid.cell_lo.resize(n);
    grid.cell_hi.resize(n);
    grid.cell_lo[0] = 0.5 * (angles.back() - kTwoPi + angles[0]);
    for (std::size_t g = 1; g < n; ++g) grid.cell_lo[g] = 0.5 * (angles[g - 1] + angles[g]);
    for (std::size_t g = 0; g + 1 < n; ++g) grid.cell_hi[g] = grid.cell_lo[g + 1];
    grid.cell_hi[n - 1] = grid.cell_lo[0] + kTwoPi;
    grid.angles = std::move(angles);
    return grid;
}

}  // namespace hplus
