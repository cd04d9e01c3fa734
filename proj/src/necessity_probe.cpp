#include "hplus/necessity_probe.hpp"

#include <algorithm>
#include <cmath>

#include "hplus/errors.hpp"

namespace hplus {

double radial_sample_depth(int i, int radial) { return std::pow(10.0, -8.0 * i / radial); }

std::vector<RadialProjectionEstimate> radial_projection_profile(const BoundaryMeasure& mu,
                                                                const std::vector<double>& lambdas, int rays,
                                                                int radial) {
    if (rays < 1 || radial < 1) throw InputError("rays and radial samples must be positive");
    for (double l : lambdas) {
        if (!(l > 1.0)) throw InputError("lambda must exceed 1");
    }
    const double at_origin = mu.total_mass();
    if (!(at_origin > 0.0)) throw InputError("measure has no mass");

    std::vector<double> radius(radial), num(radial);
    for (int i = 0; i < radial; ++i) {
        const double s = radial_sample_depth(i + 1, radial);
        radius[i] = 1.0 - s;
        num[i] = s * (2.0 - s);
    }
    const auto& atoms = mu.atoms();
    std::vector<int> flagged(lambdas.size(), 0);
    std::vector<double> half_sin_sq(atoms.size());
    for (int k = 0; k < rays; ++k) {
        const double theta = kTwoPi * k / rays;
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            const double h = std::sin(0.5 * (theta - atoms[a].angle));
            half_sin_sq[a] = h * h;
        }
        double peak = 0.0;
        for (int i = 0; i < radial; ++i) {
            const double s = 1.0 - radius[i];
            double u = 0.0;
            for (std::size_t a = 0; a < atoms.size(); ++a) {
                u += atoms[a].mass * num[i] / (s * s + 4.0 * radius[i] * half_sin_sq[a]);
            }
            peak = std::max(peak, u);
        }
        for (std::size_t l = 0; l < lambdas.size(); ++l) {
            if (peak > lambdas[l] * at_origin) ++flagged[l];
        }
    }
    std::vector<RadialProjectionEstimate> out;
    for (std::size_t l = 0; l < lambdas.size(); ++l) {
        out.push_back({lambdas[l], kTwoPi * flagged[l] / rays, rays, radial});
    }
    return out;
}

RadialProjectionEstimate radial_projection_measure(const BoundaryMeasure& mu, double lambda, int rays, int radial) {
    return radial_projection_profile(mu, {lambda}, rays, radial).front();
}

NecessityReport necessity_replay(const PointSequence& seq, double epsilon, std::size_t base, const GridSpec& spec,
                                 double c_bound) {
    if (base >= seq.size()) throw InputError("base node out of range");
    NecessityReport r;
    r.base = base;
    r.epsilon = epsilon;
    r.c_bound = c_bound;

    // Moving the base to the origin leaves every distance to it unchanged.
    const Automorphism tau = mobius_to_origin(seq[base]);
    std::vector<DiscPoint> moved;
    std::vector<double> dist;
    for (const auto& z : seq.points()) {
        moved.push_back(tau.apply(z));
        dist.push_back(hyperbolic_distance(z, seq[base]));
    }
    moved[base] = DiscPoint();
    const PointSequence centered(seq.label(), moved);
    for (double b : dist) r.values.push_back(std::exp2(epsilon * b));

    for (double b : dist) {
        const auto j = static_cast<std::size_t>(std::floor(b));
        if (r.shell_counts.size() <= j) r.shell_counts.resize(j + 1, 0);
        ++r.shell_counts[j];
    }
    for (std::size_t j = 0; j < r.shell_counts.size(); ++j) {
        r.fitted_c = std::max(r.fitted_c, r.shell_counts[j] / std::exp2((1.0 - epsilon) * static_cast<double>(j)));
    }

    r.solve = solve_direct({centered, r.values, epsilon}, spec);
    r.feasible = r.solve.status == Feasibility::feasible;
    r.bound_holds = r.feasible && r.fitted_c <= c_bound;
    return r;
}

}  // namespace hplus
