#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hplus/disc_geometry.hpp"

namespace hplus {

/// A finite sequence of pairwise distinct disc points.
class PointSequence {
public:
    PointSequence() = default;
    /// Throws InputError naming the first repeated pair.
    PointSequence(std::string label, std::vector<DiscPoint> points);

    const std::string& label() const { return label_; }
    const std::vector<DiscPoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const DiscPoint& operator[](std::size_t i) const { return points_[i]; }

private:
    std::string label_;
    std::vector<DiscPoint> points_;
};

/// The pair (M, alpha) in a density bound count <= M 2^{alpha l}.
struct DensityConstants {
    double m_const = 1.0;
    double alpha = 0.5;
};

/// Worst case found by a checker: base node, level (l, radius or box side),
/// the count or sum there, and the normalized ratio compared against M.
struct Witness {
    std::size_t base = 0;
    double level = 0.0;
    double count = 0.0;
    double ratio = 0.0;
};

struct ConditionResult {
    std::string id;
    bool passed = true;
    /// Smallest M for which the condition holds at the given alpha.
    double fitted_m = 0.0;
    DensityConstants constants;
    std::optional<Witness> witness;
};

/// Points at hyperbolic distance l + kLevelSlack * max(1, l) still count as "within l".
/// Sequences built at exact distances otherwise lose points to rounding.
inline constexpr double kLevelSlack = 1e-9;

ConditionResult check_condition_a(const PointSequence& seq, const DensityConstants& c);
ConditionResult check_condition_b(const PointSequence& seq, const DensityConstants& c);
ConditionResult check_condition_c(const PointSequence& seq, const DensityConstants& c);
ConditionResult check_condition_d(const PointSequence& seq, const DensityConstants& c);

/// Minimal pairwise hyperbolic distance and the pair attaining it; +inf for fewer than two points.
struct SeparationResult {
    double gap = 0.0;
    std::size_t first = 0;
    std::size_t second = 0;
};
SeparationResult check_separation(const PointSequence& seq);

/// sup over candidate boxes of (1/side) sum_{z in box} (1 - |z|).
struct CarlesonResult {
    double constant = 0.0;
    CarlesonBox box;
    std::size_t box_index = 0;  // owning point, or seq.size() for the whole disc
};
CarlesonResult check_carleson_33(const PointSequence& seq);

struct ClassificationReport {
    std::string label;
    std::size_t size = 0;
    DensityConstants constants;
    std::vector<ConditionResult> conditions;  // a, b, c, d
    SeparationResult separation;
    CarlesonResult carleson;
};

ClassificationReport classify(const PointSequence& seq, const DensityConstants& c);

// Constants under which the other conditions follow from (a) with (M, alpha).

/// (b) holds with (4^alpha M, alpha).
DensityConstants a_to_b(const DensityConstants& a);
/// (c) holds with (M 2^{alpha (kLayerSpread + 1)}, alpha).
DensityConstants a_to_c(const DensityConstants& a);
/// (d) holds with exponent (1 + alpha) / 2 and the matching geometric-series constant.
DensityConstants a_to_d(const DensityConstants& a);
/// Upper bound on check_carleson_33 for a sequence satisfying (a) with (M, alpha)
/// that has a point with 1 - |z| >= 1/2.
double carleson_bound_from_a(const DensityConstants& a);

/// For z_j in Q(z_n) with 2^{-l-1}(1-|z_n|) < 1-|z_j|: beta(z_j, z_n) < l + kLayerSpread.
double layer_spread_constant();

}  // namespace hplus
