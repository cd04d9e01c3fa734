#include "hplus/interp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "hplus/errors.hpp"
#include "hplus/simplex.hpp"

namespace hplus {

void InterpolationProblem::validate() const {
    if (values.size() != seq.size()) {
        throw InputError("expected " + std::to_string(seq.size()) + " values, got " + std::to_string(values.size()));
    }
    if (seq.empty()) throw InputError("interpolation problem has no nodes");
    for (std::size_t n = 0; n < values.size(); ++n) {
        if (!(values[n] > 0.0) || !std::isfinite(values[n])) {
            throw InputError("value " + std::to_string(n) + " must be a positive finite number");
        }
    }
    if (!(tolerance > 0.0 && tolerance <= 1e-3)) throw InputError("tolerance must lie in (0, 1e-3]");
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw InputError("epsilon must lie in (0, 1]");
}

CompatibilityResult check_compatibility(const InterpolationProblem& p) {
    CompatibilityResult r;
    for (std::size_t n = 0; n < p.seq.size(); ++n) {
        for (std::size_t m = n + 1; m < p.seq.size(); ++m) {
            const double lhs = std::abs(std::log2(p.values[n]) - std::log2(p.values[m]));
            const double rhs = p.epsilon * hyperbolic_distance(p.seq[n], p.seq[m]);
            const double ratio = lhs / rhs;
            if (ratio > r.worst_ratio) {
                r.worst_ratio = ratio;
                r.first = n;
                r.second = m;
            }
        }
    }
    // Room for the rounding of log2 and exp2 on values built at exact equality.
    r.ok = r.worst_ratio <= 1.0 + 1e-12;
    return r;
}

std::vector<double> generate_compatible_values(const PointSequence& seq, double epsilon, std::uint64_t seed) {
    const std::size_t d = seq.size();
    std::vector<double> dist(d * d, 0.0);
    double top = 0.0;
    for (std::size_t n = 0; n < d; ++n) {
        for (std::size_t m = n + 1; m < d; ++m) {
            dist[n * d + m] = dist[m * d + n] = hyperbolic_distance(seq[n], seq[m]);
            top = std::max(top, dist[n * d + m]);
        }
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> offset(0.0, std::max(top, 1.0));
    std::vector<double> c(d);
    for (auto& v : c) v = offset(rng);
    std::vector<double> w(d);
    for (std::size_t n = 0; n < d; ++n) {
        double level = c[n];
        for (std::size_t m = 0; m < d; ++m) level = std::min(level, c[m] + dist[n * d + m]);
        w[n] = std::exp2(epsilon * level);
    }
    return w;
}

std::shared_ptr<const std::vector<double>> kernel_matrix(const PointSequence& seq, const Grid& grid) {
    const std::size_t d = seq.size();
    auto a = std::make_shared<std::vector<double>>(d * grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        for (std::size_t n = 0; n < d; ++n) (*a)[g * d + n] = kTwoPi * poisson_kernel(seq[n], grid.angles[g]);
    }
    return a;
}

GridSpec grid_for(const PointSequence& seq, const GridSpec& spec) {
    GridSpec out = spec;
    out.focus.insert(out.focus.end(), seq.points().begin(), seq.points().end());
    return out;
}

namespace {

lp::Problem base_problem(const InterpolationProblem& p, const Grid& grid,
                         const std::shared_ptr<const std::vector<double>>& kernel) {
    lp::Problem lp;
    lp.rows = static_cast<int>(p.seq.size());
    lp.dense_cols = static_cast<int>(grid.size());
    lp.dense = kernel;
    lp.rhs = p.values;
    lp.initial_basis.assign(lp.rows, -1);
    return lp;
}

// Two residual columns per node. For a node in T the free one lets u(z_n) exceed w_n;
// for a node in S it lets u(z_n) fall short. The penalized one carries cost 1/w_n.
lp::Problem one_sided_problem(const InterpolationProblem& p, const Grid& grid,
                              const std::shared_ptr<const std::vector<double>>& kernel, std::uint32_t mask) {
    lp::Problem lp = base_problem(p, grid, kernel);
    for (int n = 0; n < lp.rows; ++n) {
        const bool t = (mask >> n) & 1u;
        const double w = p.values[n];
        lp.sparse.push_back({{{n, t ? -1.0 : 1.0}}, 0.0, lp::kInf});
        lp.sparse.push_back({{{n, t ? 1.0 : -1.0}}, 1.0 / w, lp::kInf});
        lp.initial_basis[n] = lp.dense_cols + 2 * n + (t ? 1 : 0);
    }
    return lp;
}

lp::Options lp_options() {
    lp::Options o;
    o.certify = true;
    return o;
}

}  // namespace

InterpolationResult solve_direct(const InterpolationProblem& p, const GridSpec& spec) {
    p.validate();
    const Grid grid = build_grid(grid_for(p.seq, spec));
    const auto kernel = kernel_matrix(p.seq, grid);

    lp::Problem lp = base_problem(p, grid, kernel);
    for (int n = 0; n < lp.rows; ++n) {
        const double penalty = 1.0 / p.values[n];
        lp.sparse.push_back({{{n, 1.0}}, penalty, lp::kInf});
        lp.sparse.push_back({{{n, -1.0}}, penalty, lp::kInf});
        lp.initial_basis[n] = lp.dense_cols + 2 * n;
    }
    const lp::Solution sol = lp::solve(lp, lp_options());
    if (sol.status != lp::Status::optimal) throw ConstructionError("interpolation LP did not reach an optimum");

    InterpolationResult r;
    r.grid_size = grid.size();
    r.objective = sol.objective;
    r.exact = sol.exact;
    if (sol.objective <= p.tolerance) {
        r.status = Feasibility::feasible;
        std::vector<Atom> atoms;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            if (sol.x[g] > 0.0) atoms.push_back({grid.angles[g], sol.x[g]});
        }
        r.measure = BoundaryMeasure(std::move(atoms));
        for (std::size_t n = 0; n < p.seq.size(); ++n) {
            r.residuals.push_back(std::abs(poisson_integral(*r.measure, p.seq[n]) - p.values[n]) / p.values[n]);
        }
    } else {
        r.status = Feasibility::infeasible;
        double scale = 0.0;
        for (double v : sol.dual) scale = std::max(scale, std::abs(v));
        for (double v : sol.dual) {
            r.certificate.push_back(v / scale);
            r.in_t.push_back(v >= 0.0);
        }
    }
    return r;
}

bool one_sided_feasible(const InterpolationProblem& p, const Grid& grid,
                        const std::shared_ptr<const std::vector<double>>& kernel, std::uint32_t mask) {
    const lp::Solution sol = lp::solve(one_sided_problem(p, grid, kernel, mask), lp_options());
    if (sol.status != lp::Status::optimal) throw ConstructionError("one-sided LP did not reach an optimum");
    return sol.objective <= p.tolerance;
}

PartitionResult solve_by_partitions(const InterpolationProblem& p, const GridSpec& spec) {
    p.validate();
    if (p.seq.size() > kPartitionNodeCap) {
        throw InputError("partition enumeration is limited to " + std::to_string(kPartitionNodeCap) + " nodes");
    }
    const Grid grid = build_grid(grid_for(p.seq, spec));
    const auto kernel = kernel_matrix(p.seq, grid);
    PartitionResult r;
    const std::uint32_t count = 1u << p.seq.size();
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        ++r.partitions_solved;
        if (!one_sided_feasible(p, grid, kernel, mask)) {
            r.feasible = false;
            r.failing_mask = mask;
            break;
        }
    }
    return r;
}

std::vector<ProfilePoint> epsilon_profile(const PointSequence& seq, const GridSpec& spec, int trials,
                                          const std::vector<double>& eps_grid, std::uint64_t seed) {
    if (trials < 1) throw InputError("epsilon profile needs at least one trial");
    std::vector<ProfilePoint> out;
    for (double eps : eps_grid) {
        ProfilePoint pt{eps, 0, trials};
        for (int t = 0; t < trials; ++t) {
            InterpolationProblem p{seq, generate_compatible_values(seq, eps, seed + t), eps};
            if (solve_direct(p, spec).status == Feasibility::feasible) ++pt.feasible;
        }
        out.push_back(pt);
    }
    return out;
}

}  // namespace hplus
