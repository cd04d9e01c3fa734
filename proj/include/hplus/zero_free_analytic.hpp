#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "hplus/boundary_measure.hpp"
#include "hplus/interp_solver.hpp"

namespace hplus {

struct ModulusProblem {
    PointSequence seq;
    std::vector<double> target_moduli;
    double cap_c = 0.0;  // 0 selects 2 max |w_n|
    double epsilon = 1.0;
    double tolerance = 1e-8;

    double cap() const;
    /// Throws InputError on length mismatch or a modulus outside (0, cap).
    void validate() const;
};

/// t_n = ln(C / |w_n|), the values a positive harmonic u must take at z_n.
std::vector<double> log_targets(const ModulusProblem& p);

struct LogLogResult {
    bool ok = true;
    std::size_t first = 0;
    std::size_t second = 0;
    /// max over pairs of |log2 ln(C/|w_n|) - log2 ln(C/|w_m|)| / (epsilon beta).
    double worst_ratio = 0.0;
};

/// The outer logarithm is taken base 2, matching the base of beta.
LogLogResult check_loglog_compat(const ModulusProblem& p);

/// Conjugate of the Poisson integral of mu, vanishing at the origin:
/// sum of mass * 2 Im(z conj(zeta)) / |zeta - z|^2 over atoms zeta.
double conjugate_at(const BoundaryMeasure& mu, const DiscPoint& z);

/// f = C exp(-(u + i u~)) for the Poisson integral u of a measure.
class ModulusInterpolant {
public:
    ModulusInterpolant(BoundaryMeasure mu, double cap) : mu_(std::move(mu)), cap_(cap) {}
    const BoundaryMeasure& measure() const { return mu_; }
    double cap() const { return cap_; }
    double modulus(const DiscPoint& z) const;
    double phase(const DiscPoint& z) const;  // -u~(z), not reduced mod 2pi
    std::complex<double> value(const DiscPoint& z) const;

private:
    BoundaryMeasure mu_;
    double cap_;
};

struct ModulusReport {
    InterpolationResult solve;
    std::optional<ModulusInterpolant> f;  // present when the LP is feasible
    std::vector<double> moduli;           // |f(z_n)|
    std::vector<double> phases;           // Arg f(z_n), in (-pi, pi]
    std::vector<double> relative_errors;  // | |f(z_n)| - |w_n| | / |w_n|
};

/// Throws PreconditionError when the log-log condition fails. An infeasible
/// LP is returned as a report without f, carrying the certificate.
ModulusReport construct_modulus_interpolant(const ModulusProblem& p, const GridSpec& spec = {});

}  // namespace hplus
