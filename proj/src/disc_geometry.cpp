#include "hplus/disc_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hplus {

DiscPoint DiscPoint::cartesian(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y) || x * x + y * y >= 1.0) {
        throw std::domain_error("point (" + std::to_string(x) + ", " + std::to_string(y) +
                                ") is not inside the open unit disc");
    }
    const double r = std::hypot(x, y);
    if (r == 0.0) return {};
    return from_depth(std::atan2(y, x), 1.0 - r);
}

DiscPoint DiscPoint::polar(double modulus, double angle) {
    if (!(modulus >= 0.0 && modulus < 1.0) || !std::isfinite(angle)) {
        throw std::domain_error("modulus " + std::to_string(modulus) + " is outside [0, 1)");
    }
    if (modulus == 0.0) return {};
    return {wrap_angle(angle), 1.0 - modulus};
}

DiscPoint DiscPoint::from_depth(double angle, double depth) {
    if (!(depth > 0.0 && depth <= 1.0) || !std::isfinite(angle)) {
        throw std::domain_error("depth " + std::to_string(depth) + " is outside (0, 1]");
    }
    if (depth == 1.0) return {};
    return {wrap_angle(angle), depth};
}

double DiscPoint::x() const { return modulus() * std::cos(arg_); }
double DiscPoint::y() const { return modulus() * std::sin(arg_); }

double beta_from_rho(double rho, double one_minus_rho) {
    if (rho < 0.5) return 2.0 * std::atanh(rho) / std::numbers::ln2;
    return std::log2((1.0 + rho) / one_minus_rho);
}

PairMetric metric_from_beta(double beta) {
    const double t = std::exp2(-beta);
    PairMetric m;
    m.beta = beta;
    m.rho = (1.0 - t) / (1.0 + t);
    m.one_minus_rho = 2.0 * t / (1.0 + t);
    return m;
}

namespace {

// Shared kernel of the automorphism formulas. For a = |a| e^{i phi_a} and
// sign = +1 it describes (z - a)/(1 - conj(a) z); sign = -1 gives (z + a)/(1 + conj(a) z).
struct MoebiusParts {
    double num_sq;   // |z -+ a|^2
    double den_sq;   // |1 -+ conj(a) z|^2
    double im;       // Im and Re of e^{-i phi_a} (z -+ a) conj(1 -+ conj(a) z)
    double re;
};

MoebiusParts moebius_parts(const DiscPoint& z, const DiscPoint& a, bool inverted) {
    const double sz = z.depth();
    const double sa = a.depth();
    const double mz = z.modulus();
    const double ma = a.modulus();
    const double r = mz * ma;
    const double one_minus_r = sz + sa - sz * sa;
    const double delta = wrap_angle(z.arg() - a.arg());
    const double sh = std::sin(0.5 * delta);
    const double ch = std::cos(0.5 * delta);
    const double trig = inverted ? ch * ch : sh * sh;

    MoebiusParts p;
    p.num_sq = (sa - sz) * (sa - sz) + 4.0 * r * trig;
    p.den_sq = one_minus_r * one_minus_r + 4.0 * r * trig;
    p.im = mz * std::sin(delta) * a.one_minus_mod_sq();
    if (inverted) {
        p.re = (sz - sa) * one_minus_r + 2.0 * mz * (1.0 + ma * ma) * ch * ch;
    } else {
        p.re = (sa - sz) * one_minus_r - 2.0 * mz * (1.0 + ma * ma) * sh * sh;
    }
    return p;
}

}  // namespace

PairMetric pair_metric(const DiscPoint& z, const DiscPoint& w) {
    const MoebiusParts p = moebius_parts(z, w, false);
    PairMetric m;
    if (p.num_sq == 0.0) return m;
    m.rho = std::min(std::sqrt(p.num_sq / p.den_sq), std::nextafter(1.0, 0.0));
    const double q = z.one_minus_mod_sq() * w.one_minus_mod_sq() / p.den_sq;
    m.one_minus_rho = std::min(q / (1.0 + m.rho), 1.0);
    m.beta = beta_from_rho(m.rho, m.one_minus_rho);
    return m;
}

double pseudo_hyperbolic(const DiscPoint& z, const DiscPoint& w) { return pair_metric(z, w).rho; }

double hyperbolic_distance(const DiscPoint& z, const DiscPoint& w) { return pair_metric(z, w).beta; }

Automorphism Automorphism::to_origin(const DiscPoint& a) {
    Automorphism t;
    t.center_ = a;
    return t;
}

Automorphism Automorphism::inverse() const {
    Automorphism t = *this;
    t.inverted_ = !inverted_;
    return t;
}

DiscPoint Automorphism::apply(const DiscPoint& z) const {
    if (center_.is_origin()) return z;
    const MoebiusParts p = moebius_parts(z, center_, inverted_);
    if (p.num_sq == 0.0) return {};
    const double m = std::sqrt(p.num_sq / p.den_sq);
    if (m == 0.0) return {};
    const double q = center_.one_minus_mod_sq() * z.one_minus_mod_sq() / p.den_sq;
    const double depth = std::min(q / (1.0 + m), 1.0);
    if (depth == 1.0) return {};
    return DiscPoint::from_depth(center_.arg() + std::atan2(p.im, p.re), depth);
}

double Automorphism::boundary_lift(double angle) const {
    if (center_.is_origin()) return angle;
    // The inverse map is tau_b with b = -a.
    const double phi = inverted_ ? center_.arg() + kPi : center_.arg();
    const double s = center_.depth();
    const double u = angle - phi;
    const double k = std::floor((u + kPi) / kTwoPi);
    const double u0 = u - kTwoPi * k;
    return phi + kTwoPi * k + 2.0 * std::atan2((2.0 - s) * std::sin(0.5 * u0), s * std::cos(0.5 * u0));
}

double Automorphism::apply_boundary(double angle) const { return normalize_angle(boundary_lift(angle)); }

Arc Automorphism::apply(const Arc& arc) const {
    if (arc.full()) return arc;
    const double lo = boundary_lift(arc.start);
    const double hi = boundary_lift(arc.start + arc.length);
    return Arc{normalize_angle(lo), std::clamp(hi - lo, 0.0, kTwoPi)};
}

ArcSet Automorphism::apply(const ArcSet& set) const {
    if (set.is_full() || set.empty()) return set;
    ArcSet out;
    for (const auto& piece : set.intervals()) {
        const double lo = boundary_lift(piece.lo);
        const double hi = boundary_lift(piece.hi);
        out = out.unite(ArcSet::from_arc(lo, hi - lo));
    }
    return out;
}

std::pair<double, double> harnack_interval(const DiscPoint& z, const DiscPoint& w, double u_at_w) {
    const double b = hyperbolic_distance(z, w);
    return {u_at_w * std::exp2(-b), u_at_w * std::exp2(b)};
}

ArcSet base_arc(const DiscPoint& z, double scale) {
    if (scale * z.depth() >= 1.0) return ArcSet::full();
    return ArcSet::centered(normalize_angle(z.arg()), kPi * scale * z.depth());
}

CarlesonBox CarlesonBox::over(const DiscPoint& z, double scale) {
    return {normalize_angle(z.arg()), std::min(1.0, scale * z.depth())};
}

bool box_contains(const CarlesonBox& box, const DiscPoint& z) {
    if (box.side >= 1.0) return true;
    if (z.depth() > box.side) return false;
    const double d = wrap_angle(z.arg() - box.center_angle);
    const double hw = kPi * box.side;
    return d > -hw && d <= hw;
}

double box_k_constant(double m) { return 20.0 * m + 20.0 * m * kPi + 1.0; }

double box_distance_slack(double m) { return 2.0 + 2.0 * std::log2(box_k_constant(m)); }

}  // namespace hplus
