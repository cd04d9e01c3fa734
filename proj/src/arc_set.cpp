#include "hplus/arc_set.hpp"

#include <algorithm>
#include <cmath>

namespace hplus {

double normalize_angle(double t) {
    double r = std::fmod(t, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double wrap_angle(double t) {
    double r = std::remainder(t, kTwoPi);
    if (r <= -kPi) r += kTwoPi;
    if (r > kPi) r -= kTwoPi;
    return r;
}

ArcSet ArcSet::full() {
    ArcSet s;
    s.pieces_.push_back({0.0, kTwoPi});
    return s;
}

ArcSet ArcSet::from_arc(const Arc& arc) { return from_arc(arc.start, arc.length); }

ArcSet ArcSet::from_arc(double start, double length) {
    if (!(length > 0.0)) return {};
    if (length >= kTwoPi) return full();
    const double s = normalize_angle(start);
    const double e = s + length;
    if (e <= kTwoPi) return from_intervals({{s, e}});
    return from_intervals({{s, kTwoPi}, {0.0, e - kTwoPi}});
}

ArcSet ArcSet::centered(double center, double half_width) {
    if (half_width >= kPi) return full();
    return from_arc(center - half_width, 2.0 * half_width);
}

ArcSet ArcSet::from_intervals(std::vector<AngleInterval> pieces) {
    std::erase_if(pieces, [](const AngleInterval& p) { return !(p.hi > p.lo); });
    for (auto& p : pieces) {
        p.lo = std::max(p.lo, 0.0);
        p.hi = std::min(p.hi, kTwoPi);
    }
    std::sort(pieces.begin(), pieces.end(),
              [](const AngleInterval& a, const AngleInterval& b) { return a.lo < b.lo; });
    ArcSet out;
    for (const auto& p : pieces) {
        if (!out.pieces_.empty() && p.lo <= out.pieces_.back().hi) {
            out.pieces_.back().hi = std::max(out.pieces_.back().hi, p.hi);
        } else {
            out.pieces_.push_back(p);
        }
    }
    return out;
}

std::vector<Arc> ArcSet::arcs() const {
    std::vector<Arc> out;
    if (pieces_.empty()) return out;
    if (is_full()) return {Arc{0.0, kTwoPi}};
    const bool wraps = pieces_.size() > 1 && pieces_.front().lo == 0.0 && pieces_.back().hi == kTwoPi;
    const std::size_t first = wraps ? 1 : 0;
    const std::size_t last = wraps ? pieces_.size() - 1 : pieces_.size();
    for (std::size_t i = first; i < last; ++i) out.push_back({pieces_[i].lo, pieces_[i].length()});
    if (wraps) out.push_back({pieces_.back().lo, pieces_.back().length() + pieces_.front().hi});
    return out;
}

bool ArcSet::is_full() const {
    return pieces_.size() == 1 && pieces_[0].lo == 0.0 && pieces_[0].hi == kTwoPi;
}

double ArcSet::measure() const {
    double total = 0.0;
    for (const auto& p : pieces_) total += p.length();
    return total;
}

bool ArcSet::contains(double angle) const {
    const double t = normalize_angle(angle);
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                               [](double v, const AngleInterval& p) { return v < p.lo; });
    if (it == pieces_.begin()) return false;
    --it;
    return t >= it->lo && t < it->hi;
}

template <typename Op>
ArcSet ArcSet::combine(const ArcSet& other, Op op) const {
    std::vector<double> cuts;
    cuts.reserve(2 * (pieces_.size() + other.pieces_.size()) + 2);
    cuts.push_back(0.0);
    cuts.push_back(kTwoPi);
    for (const auto& p : pieces_) {
        cuts.push_back(p.lo);
        cuts.push_back(p.hi);
    }
    for (const auto& p : other.pieces_) {
        cuts.push_back(p.lo);
        cuts.push_back(p.hi);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    // Every elementary cell [cuts[i], cuts[i+1]) lies wholly inside or outside
    // each operand, so membership of its left endpoint decides it.
    std::vector<AngleInterval> pieces;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i];
        if (op(contains(lo), other.contains(lo))) pieces.push_back({lo, cuts[i + 1]});
    }
    return from_intervals(std::move(pieces));
}

ArcSet ArcSet::unite(const ArcSet& other) const {
    return combine(other, [](bool a, bool b) { return a || b; });
}

ArcSet ArcSet::intersect(const ArcSet& other) const {
    return combine(other, [](bool a, bool b) { return a && b; });
}

ArcSet ArcSet::subtract(const ArcSet& other) const {
    return combine(other, [](bool a, bool b) { return a && !b; });
}

bool ArcSet::disjoint_from(const ArcSet& other) const { return intersect(other).empty(); }

bool ArcSet::subset_of(const ArcSet& other) const { return subtract(other).empty(); }

}  // namespace hplus
