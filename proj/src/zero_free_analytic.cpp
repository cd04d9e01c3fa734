#include "hplus/zero_free_analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hplus/errors.hpp"

namespace hplus {

double ModulusProblem::cap() const {
    if (cap_c > 0.0) return cap_c;
    double top = 0.0;
    for (double m : target_moduli) top = std::max(top, m);
    return 2.0 * top;
}

void ModulusProblem::validate() const {
    if (target_moduli.size() != seq.size()) {
        throw InputError("expected " + std::to_string(seq.size()) + " moduli, got " +
                         std::to_string(target_moduli.size()));
    }
    const double c = cap();
    for (std::size_t n = 0; n < target_moduli.size(); ++n) {
        const double m = target_moduli[n];
        if (!(m > 0.0) || !(m < c)) {
            throw InputError("modulus " + std::to_string(n) + " must lie strictly between 0 and C = " +
                             std::to_string(c));
        }
    }
}

std::vector<double> log_targets(const ModulusProblem& p) {
    p.validate();
    const double c = p.cap();
    std::vector<double> t;
    for (double m : p.target_moduli) t.push_back(std::log(c / m));
    return t;
}

LogLogResult check_loglog_compat(const ModulusProblem& p) {
    p.validate();
    const double c = p.cap();
    std::vector<double> ll;
    for (double m : p.target_moduli) ll.push_back(std::log2(std::log(c / m)));
    LogLogResult r;
    for (std::size_t n = 0; n < ll.size(); ++n) {
        for (std::size_t m = n + 1; m < ll.size(); ++m) {
            const double ratio = std::abs(ll[n] - ll[m]) / (p.epsilon * hyperbolic_distance(p.seq[n], p.seq[m]));
            if (ratio > r.worst_ratio) {
                r.worst_ratio = ratio;
                r.first = n;
                r.second = m;
            }
        }
    }
    r.ok = r.worst_ratio <= 1.0 + 1e-12;
    return r;
}

double conjugate_at(const BoundaryMeasure& mu, const DiscPoint& z) {
    if (z.is_origin()) return 0.0;
    const double s = z.depth();
    double v = 0.0;
    for (const Atom& a : mu.atoms()) {
        const double diff = z.arg() - a.angle;
        const double h = std::sin(0.5 * diff);
        v += a.mass * 2.0 * z.modulus() * std::sin(diff) / (s * s + 4.0 * z.modulus() * h * h);
    }
    return v;
}

double ModulusInterpolant::modulus(const DiscPoint& z) const { return cap_ * std::exp(-poisson_integral(mu_, z)); }

double ModulusInterpolant::phase(const DiscPoint& z) const { return -conjugate_at(mu_, z); }

std::complex<double> ModulusInterpolant::value(const DiscPoint& z) const {
    return std::polar(modulus(z), phase(z));
}

ModulusReport construct_modulus_interpolant(const ModulusProblem& p, const GridSpec& spec) {
    const LogLogResult compat = check_loglog_compat(p);
    if (!compat.ok) {
        throw PreconditionError("log-log condition fails on nodes " + std::to_string(compat.first) + " and " +
                                std::to_string(compat.second) + " (ratio " + std::to_string(compat.worst_ratio) +
                                ")");
    }
    ModulusReport r;
    r.solve = solve_direct({p.seq, log_targets(p), p.epsilon, p.tolerance}, spec);
    if (r.solve.status != Feasibility::feasible) return r;
    r.f.emplace(*r.solve.measure, p.cap());
    for (std::size_t n = 0; n < p.seq.size(); ++n) {
        const double m = r.f->modulus(p.seq[n]);
        r.moduli.push_back(m);
        r.phases.push_back(wrap_angle(r.f->phase(p.seq[n])));
        r.relative_errors.push_back(std::abs(m - p.target_moduli[n]) / p.target_moduli[n]);
    }
    return r;
}

}  // namespace hplus
