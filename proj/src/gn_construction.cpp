#include "hplus/gn_construction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hplus/errors.hpp"
#include "hplus/interp_solver.hpp"
#include "hplus/simplex.hpp"

namespace hplus {

bool ConstructionParams::admissible() const {
    const double c = box_distance_slack(m0);
    return constants.alpha + c * gamma < 1.0 && eta < std::min((1.0 - constants.alpha) / 2.0, gamma / (2.0 * c)) &&
           gamma > 0.0 && eta > 0.0 && cap_n > 0;
}

double fit_m0(const PointSequence& seq, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0, 1)");
    const double target = 1.0 - delta / 100.0;
    double m0 = 1.0;
    for (const auto& z : seq.points()) {
        while (harmonic_measure_arc(z, base_arc(z, m0)) < target) m0 *= 2.0;
    }
    return m0;
}

ShiftedPoint shifted_point(const DiscPoint& zk, const DiscPoint& zn, double gamma) {
    ShiftedPoint sp;
    const double shift = gamma * hyperbolic_distance(zk, zn);
    // On a common radius, 2^beta = s_p (2 - s_n) / (s_n (2 - s_p)) for depths s_p >= s_n.
    const double sn = zn.depth();
    const double r = std::exp2(shift) * sn / (2.0 - sn);
    if (r >= 1.0) {
        sp.clamped = r > 1.0;
        sp.point = DiscPoint();
    } else {
        sp.point = DiscPoint::from_depth(zn.arg(), 2.0 * r / (1.0 + r));
    }
    return sp;
}

double stolz_layer_count(const PointSequence& seq, double m0) {
    double worst = 0.0;
    std::vector<double> counts;
    for (std::size_t n = 0; n < seq.size(); ++n) {
        const DiscPoint& zn = seq[n];
        counts.clear();
        for (std::size_t k = 0; k < seq.size(); ++k) {
            const DiscPoint& z = seq[k];
            if (!(z.depth() > zn.depth())) continue;
            const double h = std::sin(0.5 * (z.arg() - zn.arg()));
            const double dist = std::sqrt(z.depth() * z.depth() + 4.0 * z.modulus() * h * h);
            if (dist > 11.0 * m0 * z.depth()) continue;
            const double b = hyperbolic_distance(z, zn);
            const auto j = static_cast<std::size_t>(std::floor(b));
            if (counts.size() < j + 2) counts.resize(j + 2, 0.0);
            counts[j] += 1.0;
            if (j > 0 && b == std::floor(b)) counts[j - 1] += 1.0;
        }
        for (double c : counts) worst = std::max(worst, c);
    }
    return worst;
}

namespace {

// Smallest integer N >= 1 with coeff * 2^{rate N} / (1 - 2^{rate}) <= target, for rate < 0.
int geometric_threshold(double coeff, double rate, double target) {
    const double denom = 1.0 - std::exp2(rate);
    auto bound = [&](double n) { return coeff * std::exp2(rate * n) / denom; };
    double n = std::ceil(std::log2(target * denom / coeff) / rate);
    n = std::max(n, 1.0);
    while (bound(n) > target) n += 1.0;
    while (n > 1.0 && bound(n - 1.0) <= target) n -= 1.0;
    return static_cast<int>(n);
}

}  // namespace

ConstructionParams choose_params(const PointSequence& seq, const DensityConstants& constants, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0, 1)");
    if (!(constants.alpha > 0.0 && constants.alpha < 1.0) || !(constants.m_const > 0.0)) {
        throw InputError("density constants need M > 0 and 0 < alpha < 1");
    }
    const ConditionResult a = check_condition_a(seq, constants);
    if (!a.passed) {
        throw PreconditionError("condition (a) fails at base " + std::to_string(a.witness->base) + ", l = " +
                                std::to_string(static_cast<int>(a.witness->level)) + ": count " +
                                std::to_string(static_cast<long>(a.witness->count)) + " exceeds M 2^{alpha l}");
    }

    ConstructionParams p;
    p.delta = delta;
    p.constants = constants;
    p.m0 = fit_m0(seq, delta);
    p.c_m0 = box_distance_slack(p.m0);
    p.k_m0 = box_k_constant(p.m0);
    const double alpha = constants.alpha;
    const double m = constants.m_const;
    p.gamma = (1.0 - alpha) / (2.0 * p.c_m0);
    p.eta = std::min((1.0 - alpha) / 2.0, p.gamma / (2.0 * p.c_m0)) / 2.0;
    p.lambda = delta / 25.0;
    p.stolz_count = stolz_layer_count(seq, p.m0);

    // Shifted-depth sum over far points of 20 M0 Q(z_k).
    const double shift_rate = alpha + p.c_m0 * p.gamma - 1.0;
    const double shift_coeff = m * std::pow(p.k_m0, 1.0 - p.c_m0 * p.gamma);
    int n = geometric_threshold(shift_coeff, shift_rate, p.lambda);

    // Parts (A) and (B): omega(z_n, G_k) <= C_AB 2^{-beta}.
    const double c1 = 1.0 / (4.0 * kPi + 2.0 / p.m0);
    const double c_ab = std::max(2.0 * p.m0 * std::exp2(p.c_m0), 4.0 * p.m0 / (c1 * c1));
    const double ab_rate = p.eta + alpha - 1.0;
    const double ab_coeff = c_ab * m * std::exp2(alpha);
    n = std::max(n, geometric_threshold(ab_coeff, ab_rate, delta / 3.0));

    // Part (C): omega(z_n, G_k) <= C3 (1 - |z_n|) / (1 - |z_n^gamma(k)|) <= 2 C3 2^{-gamma beta}.
    const double c3 = 2.0;
    const double c_rate = p.eta - p.gamma;
    const double c_coeff = 2.0 * c3 * p.stolz_count;
    if (p.stolz_count > 0.0) n = std::max(n, geometric_threshold(c_coeff, c_rate, delta / 3.0));

    // Far points must have I(z_n^gamma(k)) covering M0 I_n, with one unit of room for rounding.
    n = std::max(n, static_cast<int>(std::ceil((1.0 + std::log2(p.m0)) / p.gamma)) + 1);

    p.cap_n = n;
    p.shift_bound = shift_coeff * std::exp2(shift_rate * n) / (1.0 - std::exp2(shift_rate));
    p.near_far_bound = ab_coeff * std::exp2(ab_rate * n) / (1.0 - std::exp2(ab_rate));
    p.stolz_bound = c_coeff * std::exp2(c_rate * n) / (1.0 - std::exp2(c_rate));
    return p;
}

ESets build_e_sets(const PointSequence& seq, const ConstructionParams& params, bool enforce) {
    ESets out;
    const std::size_t d = seq.size();
    out.sets.resize(d);
    out.coverage.resize(d);
    out.shifted_sum.assign(d, 0.0);
    std::vector<AngleInterval> removed;
    for (std::size_t k = 0; k < d; ++k) {
        const DiscPoint& zk = seq[k];
        const CarlesonBox box = CarlesonBox::over(zk, 20.0 * params.m0);
        removed.clear();
        for (std::size_t n = 0; n < d; ++n) {
            const DiscPoint& zn = seq[n];
            if (n == k || zn.depth() > zk.depth() || !box_contains(box, zn)) continue;
            if (hyperbolic_distance(zk, zn) < params.cap_n) continue;
            const ShiftedPoint sp = shifted_point(zk, zn, params.gamma);
            out.shifted_sum[k] += sp.point.depth() / zk.depth();
            const auto arc = base_arc(sp.point, 1.0).intervals();
            removed.insert(removed.end(), arc.begin(), arc.end());
        }
        out.sets[k] = base_arc(zk, params.m0).subtract(ArcSet::from_intervals(removed));
        out.coverage[k] = harmonic_measure_arc(zk, out.sets[k]);
        if (enforce && out.coverage[k] < 1.0 - params.delta / 10.0) {
            throw ConstructionError("omega(z_" + std::to_string(k) + ", E) = " + std::to_string(out.coverage[k]) +
                                    " is below 1 - delta/10");
        }
    }
    return out;
}

std::vector<std::size_t> construction_order(const PointSequence& seq) {
    std::vector<std::size_t> order(seq.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const DiscPoint& za = seq[a];
        const DiscPoint& zb = seq[b];
        if (za.depth() != zb.depth()) return za.depth() > zb.depth();
        if (za.arg() != zb.arg()) return za.arg() < zb.arg();
        return a < b;
    });
    return order;
}

namespace {

bool pairwise_disjoint(const std::vector<ArcSet>& sets) {
    std::vector<AngleInterval> all;
    for (const auto& s : sets) all.insert(all.end(), s.intervals().begin(), s.intervals().end());
    std::sort(all.begin(), all.end(), [](const AngleInterval& a, const AngleInterval& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < all.size(); ++i) {
        if (all[i].lo < all[i - 1].hi) return false;
    }
    return true;
}

}  // namespace

GnFamily build_gn(const PointSequence& seq, const ConstructionParams& params, bool enforce) {
    GnFamily fam;
    fam.params = params;
    const std::size_t d = seq.size();
    fam.e = build_e_sets(seq, params, enforce).sets;
    fam.g.resize(d);
    fam.near.resize(d);
    fam.order = construction_order(seq);

    std::vector<double> dist(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) dist[i * d + j] = dist[j * d + i] = hyperbolic_distance(seq[i], seq[j]);
    }
    for (std::size_t n = 0; n < d; ++n) {
        for (std::size_t k = 0; k < d; ++k) {
            if (dist[n * d + k] <= params.cap_n) fam.near[n].push_back(k);
        }
    }

    std::vector<std::size_t> done;
    for (std::size_t j : fam.order) {
        ArcSet covered;
        bool any_near = false;
        for (std::size_t k : done) {
            if (dist[j * d + k] > params.cap_n) continue;
            any_near = true;
            covered = covered.unite(fam.g[k]);
        }
        if (!any_near) {
            fam.g[j] = fam.e[j];
        } else if (harmonic_measure_arc(seq[j], covered) >= 1.0 - params.delta) {
            fam.g[j] = ArcSet();
        } else {
            fam.g[j] = fam.e[j].subtract(covered);
        }
        done.push_back(j);
    }
    if (enforce && !pairwise_disjoint(fam.g)) throw ConstructionError("constructed boundary sets overlap");
    return fam;
}

bool EstimateReport::holds(double delta) const {
    if (!disjoint || !nested) return false;
    for (double m : cover_margin) {
        if (m < 0.0) return false;
    }
    for (double t : tail_sum) {
        if (!(t < delta)) return false;
    }
    return true;
}

EstimateReport verify_estimates(const GnFamily& fam, const PointSequence& seq) {
    EstimateReport r;
    const std::size_t d = seq.size();
    const auto& p = fam.params;
    r.disjoint = pairwise_disjoint(fam.g);
    for (std::size_t n = 0; n < d; ++n) {
        r.nested = r.nested && fam.g[n].subset_of(fam.e[n]) && fam.e[n].subset_of(base_arc(seq[n], p.m0));
    }
    r.cover_margin.resize(d);
    r.tail_sum.assign(d, 0.0);
    std::vector<char> is_near(d);
    for (std::size_t n = 0; n < d; ++n) {
        std::fill(is_near.begin(), is_near.end(), 0);
        for (std::size_t k : fam.near[n]) is_near[k] = 1;
        double cover = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            if (fam.g[k].empty()) continue;
            const double w = harmonic_measure_arc(seq[n], fam.g[k]);
            if (is_near[k]) {
                cover += w;
            } else {
                r.tail_sum[n] += std::exp2(p.eta * hyperbolic_distance(seq[k], seq[n])) * w;
            }
        }
        r.cover_margin[n] = cover - (1.0 - p.delta);
    }
    return r;
}

HInftyResult solve_hinfty_partition(const PointSequence& seq, std::uint32_t mask, const GridSpec& spec,
                                    double tolerance) {
    if (seq.empty()) throw InputError("bounded interpolation needs at least one node");
    HInftyResult out;
    out.grid = build_grid(grid_for(seq, spec));
    const Grid& grid = out.grid;
    const int d = static_cast<int>(seq.size());
    const int cells = static_cast<int>(grid.size());

    // omega(z_n, cell_g), exact; rows sum to one.
    std::vector<double> omega(static_cast<std::size_t>(d) * cells);
    std::vector<double> row_sum(d, 0.0);
    for (int g = 0; g < cells; ++g) {
        for (int n = 0; n < d; ++n) {
            const double w = harmonic_measure_interval(seq[n], grid.cell_lo[g], grid.cell_hi[g]);
            omega[static_cast<std::size_t>(g) * d + n] = w;
            row_sum[n] += w;
        }
    }

    // Variables p_g = (1 + h_g)/2 in [0, 1], the level, and one surplus per node.
    lp::Problem lp;
    lp.rows = d;
    lp.dense_cols = cells;
    auto dense = std::make_shared<std::vector<double>>(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) (*dense)[i] = 2.0 * omega[i];
    lp.dense = dense;
    lp.dense_upper.assign(cells, 1.0);
    lp.rhs = row_sum;
    lp.initial_basis.assign(d, -1);
    lp::SparseColumn level;
    level.cost = -1.0;
    for (int n = 0; n < d; ++n) level.entries.push_back({n, ((mask >> n) & 1u) ? -1.0 : 1.0});
    lp.sparse.push_back(level);
    for (int n = 0; n < d; ++n) {
        const bool t = (mask >> n) & 1u;
        lp.sparse.push_back({{{n, t ? -1.0 : 1.0}}, 0.0, lp::kInf});
        if (!t) lp.initial_basis[n] = cells + 1 + n;
    }
    const lp::Solution sol = lp::solve(lp);
    if (sol.status != lp::Status::optimal) throw ConstructionError("bounded interpolation LP did not reach an optimum");

    out.h.resize(cells);
    for (int g = 0; g < cells; ++g) out.h[g] = std::clamp(2.0 * sol.x[g] - 1.0, -1.0, 1.0);
    out.at_nodes.assign(d, 0.0);
    for (int g = 0; g < cells; ++g) {
        for (int n = 0; n < d; ++n) out.at_nodes[n] += omega[static_cast<std::size_t>(g) * d + n] * out.h[g];
    }
    out.level = 1.0;
    for (int n = 0; n < d; ++n) {
        const bool t = (mask >> n) & 1u;
        out.level = std::min(out.level, t ? out.at_nodes[n] : -out.at_nodes[n]);
    }
    out.resolved = out.level > tolerance;
    return out;
}

std::vector<CellPiece> pieces_in_cells(const ArcSet& set, const Grid& grid) {
    std::vector<CellPiece> out;
    const std::size_t n = grid.size();
    const double top = grid.cell_hi[n - 1];
    for (const auto& piece : set.intervals()) {
        const double hi = std::min(piece.hi, top);
        auto g = static_cast<std::size_t>(std::upper_bound(grid.cell_hi.begin(), grid.cell_hi.end(), piece.lo) -
                                          grid.cell_hi.begin());
        for (; g < n && grid.cell_lo[g] < hi; ++g) {
            const double lo = std::max(piece.lo, grid.cell_lo[g]);
            const double up = std::min(hi, grid.cell_hi[g]);
            if (up > lo) out.push_back({g, lo, up});
        }
        // The first cell also owns [cell_lo[0] + 2pi, 2pi).
        if (piece.hi > top) out.push_back({0, std::max(piece.lo, top), piece.hi});
    }
    return out;
}

AssembledU assemble_u(const PointSequence& seq, const std::vector<double>& values, const GnFamily& fam,
                      const HInftyResult& h, std::uint32_t mask) {
    const std::size_t d = seq.size();
    if (values.size() != d) throw InputError("value count does not match the sequence");
    AssembledU out;
    out.at_nodes.assign(d, 0.0);
    out.at_nodes_t_only.assign(d, 0.0);
    std::vector<double> mass(h.grid.size(), 0.0);
    for (std::size_t k = 0; k < d; ++k) {
        if (fam.g[k].empty()) continue;
        const bool k_in_t = (mask >> k) & 1u;
        for (const CellPiece& pc : pieces_in_cells(fam.g[k], h.grid)) {
            const double weight = values[k] * (1.0 + h.h[pc.cell]);
            mass[pc.cell] += weight * (pc.hi - pc.lo) / kTwoPi;
            for (std::size_t n = 0; n < d; ++n) {
                const double contrib = weight * harmonic_measure_interval(seq[n], pc.lo, pc.hi);
                out.at_nodes[n] += contrib;
                if (k_in_t) out.at_nodes_t_only[n] += contrib;
            }
        }
    }
    std::vector<Atom> atoms;
    for (std::size_t g = 0; g < mass.size(); ++g) {
        if (mass[g] > 0.0) atoms.push_back({h.grid.angles[g], mass[g]});
    }
    out.measure = BoundaryMeasure(std::move(atoms));
    out.satisfied.resize(d);
    for (std::size_t n = 0; n < d; ++n) {
        const bool t = (mask >> n) & 1u;
        out.satisfied[n] = t ? out.at_nodes[n] >= values[n] : out.at_nodes[n] <= values[n];
        out.all_satisfied = out.all_satisfied && out.satisfied[n];
    }
    return out;
}

}  // namespace hplus
