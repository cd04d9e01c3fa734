#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "hplus/boundary_measure.hpp"
#include "hplus/density_classifier.hpp"

namespace hplus::testing {

// Hand-rolled generators; every test seeds its own engine.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double angle() { return uniform(0.0, kTwoPi); }

    // Modulus with 1 - |z| log-uniform in [min_depth, 1].
    DiscPoint point(double min_depth = 1e-3) {
        const double depth = std::exp(uniform(std::log(min_depth), 0.0));
        return DiscPoint::from_depth(wrap_angle(angle()), std::min(depth, 1.0));
    }

    // Uniform in the disc of radius r_max.
    DiscPoint bounded_point(double r_max) {
        const double r = r_max * std::sqrt(uniform(0.0, 1.0));
        return DiscPoint::polar(r, angle());
    }

    PointSequence sequence(int n, double r_max) {
        std::vector<DiscPoint> pts;
        while (static_cast<int>(pts.size()) < n) {
            const DiscPoint z = bounded_point(r_max);
            bool fresh = true;
            for (const auto& p : pts) fresh = fresh && hyperbolic_distance(p, z) > 0.25;
            if (fresh) pts.push_back(z);
        }
        return {"random", pts};
    }

    BoundaryMeasure measure(int atoms) {
        std::vector<Atom> a;
        for (int i = 0; i < atoms; ++i) a.push_back({angle(), uniform(0.05, 1.0)});
        return BoundaryMeasure(a);
    }

    ArcSet arc_set(int pieces) {
        ArcSet s;
        for (int i = 0; i < pieces; ++i) s = s.unite(ArcSet::from_arc(angle(), uniform(0.01, 2.0)));
        return s;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// Midpoint-rule quadrature of the Poisson kernel over an arc set.
inline double quadrature_measure(const DiscPoint& z, const ArcSet& set, int samples) {
    const std::complex<double> zc = z.complex();
    const double h = kTwoPi / samples;
    double sum = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = (i + 0.5) * h;
        if (!set.contains(t)) continue;
        sum += (1.0 - std::norm(zc)) / std::norm(std::polar(1.0, t) - zc);
    }
    return sum * h / kTwoPi;
}

// Midpoint rule on each interval of the set, so the indicator never cuts a cell.
inline double interval_quadrature(const DiscPoint& z, const ArcSet& set, int nodes_per_interval) {
    const std::complex<double> zc = z.complex();
    double sum = 0.0;
    for (const auto& iv : set.intervals()) {
        const double h = iv.length() / nodes_per_interval;
        for (int i = 0; i < nodes_per_interval; ++i) {
            sum += h * (1.0 - std::norm(zc)) / std::norm(std::polar(1.0, iv.lo + (i + 0.5) * h) - zc);
        }
    }
    return sum / kTwoPi;
}

// Cartesian oracle for the pseudo-hyperbolic distance.
inline double rho_cartesian(std::complex<double> z, std::complex<double> w) {
    return std::abs((z - w) / (1.0 - std::conj(w) * z));
}

}  // namespace hplus::testing
