#pragma once

#include <complex>
#include <utility>

#include "hplus/arc_set.hpp"

namespace hplus {

/**
 * A point of the open unit disc.
 *
 * Stored in polar form as (Arg z, 1 - |z|). Keeping the depth 1 - |z| as its
 * own number lets sequences reach hyperbolic distances of several hundred from
 * the origin, far beyond what Cartesian doubles can resolve. The Cartesian view
 * is derived on demand.
 */
class DiscPoint {
public:
    DiscPoint() = default;  // the origin

    /// Throws std::domain_error unless x^2 + y^2 < 1.
    static DiscPoint cartesian(double x, double y);
    /// Throws std::domain_error unless 0 <= modulus < 1.
    static DiscPoint polar(double modulus, double angle);
    /// Point with Arg = angle and 1 - |z| = depth; depth must lie in (0, 1].
    static DiscPoint from_depth(double angle, double depth);

    double arg() const { return arg_; }      // in (-pi, pi]; 0 at the origin
    double depth() const { return depth_; }  // 1 - |z|, in (0, 1]
    double modulus() const { return 1.0 - depth_; }
    /// 1 - |z|^2 without cancellation.
    double one_minus_mod_sq() const { return depth_ * (2.0 - depth_); }
    double x() const;
    double y() const;
    std::complex<double> complex() const { return {x(), y()}; }
    bool is_origin() const { return depth_ == 1.0; }

    friend bool operator==(const DiscPoint&, const DiscPoint&) = default;

private:
    DiscPoint(double arg, double depth) : arg_(arg), depth_(depth) {}

    double arg_ = 0.0;
    double depth_ = 1.0;
};

/// Pseudo-hyperbolic distance together with its complement, both accurate near 1.
struct PairMetric {
    double rho = 0.0;            // |(z - w) / (1 - conj(w) z)|
    double one_minus_rho = 1.0;  // 1 - rho
    double beta = 0.0;           // log2((1 + rho) / (1 - rho))
};

PairMetric pair_metric(const DiscPoint& z, const DiscPoint& w);
double pseudo_hyperbolic(const DiscPoint& z, const DiscPoint& w);
/// Hyperbolic distance in the base-2 normalization.
double hyperbolic_distance(const DiscPoint& z, const DiscPoint& w);

/// log2((1 + rho) / (1 - rho)) for rho in [0, 1).
double beta_from_rho(double rho, double one_minus_rho);
/// Inverse of beta_from_rho: rho = (2^beta - 1) / (2^beta + 1).
PairMetric metric_from_beta(double beta);

/**
 * Disc automorphism z -> (z - a) / (1 - conj(a) z), or its inverse
 * z -> (z + a) / (1 + conj(a) z). Points are mapped with depth-aware formulas
 * so that images of deep points keep their full relative accuracy.
 */
class Automorphism {
public:
    Automorphism() = default;  // identity

    /// tau_a, with tau_a(a) = 0.
    static Automorphism to_origin(const DiscPoint& a);

    Automorphism inverse() const;
    const DiscPoint& center() const { return center_; }
    bool inverted() const { return inverted_; }

    DiscPoint apply(const DiscPoint& z) const;
    /// Image angle of the boundary point e^{i angle}, in [0, 2pi).
    double apply_boundary(double angle) const;
    /// Continuous increasing lift of the boundary map: lift(t + 2pi) = lift(t) + 2pi.
    double boundary_lift(double angle) const;
    Arc apply(const Arc& arc) const;
    ArcSet apply(const ArcSet& set) const;

private:
    DiscPoint center_;
    bool inverted_ = false;
};

/// The automorphism sending a to the origin.
inline Automorphism mobius_to_origin(const DiscPoint& a) { return Automorphism::to_origin(a); }

/// Range [u_at_w * 2^-beta, u_at_w * 2^beta] allowed for u(z) by Harnack.
std::pair<double, double> harnack_interval(const DiscPoint& z, const DiscPoint& w, double u_at_w);

/// The arc C*I(z): centered at Arg z with length 2*pi*C*(1 - |z|), full once C*(1-|z|) >= 1.
ArcSet base_arc(const DiscPoint& z, double scale);

/**
 * Carleson box {r e^{it} : 0 < 1 - r <= side, e^{it} in base arc}, where the
 * base arc is centered at center_angle with half-width pi * side. With this
 * convention Q(z) = box(Arg z, 1 - |z|) and C Q(z) = box(Arg z, C (1 - |z|)).
 */
struct CarlesonBox {
    double center_angle = 0.0;
    double side = 1.0;  // in (0, 1]; side 1 is the whole disc

    static CarlesonBox over(const DiscPoint& z, double scale = 1.0);
};

bool box_contains(const CarlesonBox& box, const DiscPoint& z);

/// K(M) = 20M + 20M*pi + 1.
double box_k_constant(double m);
/// C(M) = 2 + 2 log2 K(M): |beta(z,w) - log2((1-|z|)/(1-|w|))| <= C(M) for w in 20M Q(z).
double box_distance_slack(double m);

}  // namespace hplus
