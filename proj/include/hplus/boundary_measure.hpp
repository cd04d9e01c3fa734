#pragma once

#include <utility>
#include <vector>

#include "hplus/arc_set.hpp"
#include "hplus/disc_geometry.hpp"

namespace hplus {

struct Atom {
    double angle = 0.0;  // in [0, 2pi)
    double mass = 0.0;   // >= 0
};

/**
 * Finite nonnegative atomic measure on the unit circle. The Poisson integral
 * of a unit atom has value 1 at the origin, so u(0) equals the total mass.
 */
class BoundaryMeasure {
public:
    BoundaryMeasure() = default;
    /// Normalizes angles, merges atoms at equal angles, drops zero masses.
    /// Throws std::invalid_argument on a negative or non-finite mass.
    explicit BoundaryMeasure(std::vector<Atom> atoms);

    const std::vector<Atom>& atoms() const { return atoms_; }
    double total_mass() const;
    BoundaryMeasure scaled(double factor) const;

private:
    std::vector<Atom> atoms_;  // sorted by angle
};

/// (1/2pi) (1 - |z|^2) / |e^{i angle} - z|^2.
double poisson_kernel(const DiscPoint& z, double angle);

/// sum over atoms of mass * 2pi * P_z(angle).
double poisson_integral(const BoundaryMeasure& mu, const DiscPoint& z);

/// Harmonic measure at z of the boundary interval [lo, hi) given by any real
/// angles lo <= hi with hi - lo <= 2pi.
double harmonic_measure_interval(const DiscPoint& z, double lo, double hi);

/// omega(z, set) = |tau_z(set)| / 2pi, exact through the boundary correspondence.
double harmonic_measure_arc(const DiscPoint& z, const ArcSet& set);

/// max over pairs of |log2 u(z) - log2 u(w)| - beta(z, w).
double harnack_check(const BoundaryMeasure& mu, const std::vector<std::pair<DiscPoint, DiscPoint>>& pairs);

struct GridSpec {
    int resolution = 4096;  // uniform angles, at least 16
    int refinement = 32;    // extra angles per focus point, even
    std::vector<DiscPoint> focus;
};

/**
 * Angles used as atom locations. Each angle owns the cell between the
 * midpoints to its neighbours, so the cells tile the circle exactly. Cell
 * bounds are real angles with cell_lo <= angle < cell_hi; the first cell may
 * start below 0.
 */
struct Grid {
    std::vector<double> angles;  // sorted, distinct, in [0, 2pi)
    std::vector<double> cell_lo;
    std::vector<double> cell_hi;

    std::size_t size() const { return angles.size(); }
};

/// Throws std::invalid_argument if resolution < 16 or refinement is negative.
Grid build_grid(const GridSpec& spec);

}  // namespace hplus
