#pragma once

#include <numbers>
#include <utility>
#include <vector>

namespace hplus {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduce an angle to [0, 2pi).
double normalize_angle(double t);

/// Reduce an angle to (-pi, pi].
double wrap_angle(double t);

/// A half-open arc [start, start + length) of the unit circle, angles in radians.
struct Arc {
    double start = 0.0;   // in [0, 2pi)
    double length = 0.0;  // in (0, 2pi]; 2pi is the full circle

    bool full() const { return length >= kTwoPi; }
    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Sub-interval [lo, hi) of [0, 2pi).
struct AngleInterval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    friend bool operator==(const AngleInterval&, const AngleInterval&) = default;
};

/**
 * Finite union of half-open arcs of the unit circle.
 *
 * Stored as sorted, pairwise disjoint, non-abutting intervals of [0, 2pi).
 * An arc that crosses angle 0 is kept as two pieces [0, b) and [a, 2pi), so the
 * representation is canonical and two sets covering the same points compare
 * equal. All operations compare endpoints exactly; nothing is merged unless
 * the endpoints coincide bitwise.
 */
class ArcSet {
public:
    ArcSet() = default;

    static ArcSet full();
    static ArcSet from_arc(const Arc& arc);
    static ArcSet from_arc(double start, double length);
    /// Arc [center - half_width, center + half_width); full circle once half_width >= pi.
    static ArcSet centered(double center, double half_width);
    static ArcSet from_intervals(std::vector<AngleInterval> pieces);

    const std::vector<AngleInterval>& intervals() const { return pieces_; }
    /// Arcs with the piece through angle 0 joined back into a single arc.
    std::vector<Arc> arcs() const;

    bool empty() const { return pieces_.empty(); }
    bool is_full() const;
    double measure() const;
    bool contains(double angle) const;

    ArcSet unite(const ArcSet& other) const;
    ArcSet intersect(const ArcSet& other) const;
    ArcSet subtract(const ArcSet& other) const;

    bool disjoint_from(const ArcSet& other) const;
    bool subset_of(const ArcSet& other) const;

    friend bool operator==(const ArcSet&, const ArcSet&) = default;

private:
    template <typename Op>
    ArcSet combine(const ArcSet& other, Op op) const;

    std::vector<AngleInterval> pieces_;
};

}  // namespace hplus
