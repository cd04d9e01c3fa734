#include <cmath>

#include "doctest.h"
#include "hplus/errors.hpp"
#include "hplus/gn_construction.hpp"
#include "hplus/interp_solver.hpp"
#include "hplus/sequence_gallery.hpp"
#include "support.hpp"

using namespace hplus;
using hplus::testing::Gen;

namespace {

ConstructionParams params_for(const PointSequence& s, double delta, double alpha = 0.5) {
    return choose_params(s, {check_condition_a(s, {1.0, alpha}).fitted_m, alpha}, delta);
}

std::uint32_t alternating(std::size_t d) {
    std::uint32_t mask = 0;
    for (std::size_t n = 0; n < d; n += 2) mask |= 1u << n;
    return mask;
}

}  // namespace

TEST_SUITE("gn_construction") {

TEST_CASE("fit_m0") {
    CHECK(fit_m0({"origin", {DiscPoint()}}, 0.2) == 1.0);
    const PointSequence one("one", {DiscPoint::cartesian(0.9, 0.0)});
    const double m0 = fit_m0(one, 0.5);
    CHECK(harmonic_measure_arc(one[0], base_arc(one[0], m0)) >= 0.995);
    CHECK(harmonic_measure_arc(one[0], base_arc(one[0], m0 / 2.0)) < 0.995);
    const PointSequence r = radial_geometric(10);
    double prev = INFINITY;
    for (double delta : {0.05, 0.1, 0.2, 0.4, 0.8}) {
        const double m = fit_m0(r, delta);
        CHECK(m <= prev);
        prev = m;
    }
}

TEST_CASE("shifted points") {
    const DiscPoint zn = DiscPoint::cartesian(1.0 / 3.0, 0.0);
    const ShiftedPoint p = shifted_point(DiscPoint(), zn, 1.0);
    CHECK(p.point.modulus() < 1e-15);
    CHECK_FALSE(p.clamped);
    const ShiftedPoint tiny = shifted_point(DiscPoint(), zn, 1e-12);
    CHECK(hyperbolic_distance(tiny.point, zn) < 1e-9);

    Gen gen(70);
    for (int i = 0; i < 2000; ++i) {
        const DiscPoint zk = gen.point(1e-3);
        const DiscPoint w = DiscPoint::from_depth(wrap_angle(zk.arg() + gen.uniform(-0.5, 0.5) * zk.depth()),
                                                  zk.depth() * std::exp(gen.uniform(std::log(1e-9), 0.0)));
        const double gamma = gen.uniform(0.001, 0.45);
        const ShiftedPoint sp = shifted_point(zk, w, gamma);
        REQUIRE_FALSE(sp.clamped);
        CHECK(sp.point.arg() == w.arg());
        CHECK(sp.point.modulus() <= w.modulus());
        const double want = gamma * hyperbolic_distance(zk, w);
        CHECK(std::abs(hyperbolic_distance(sp.point, w) - want) < 1e-10 * std::max(1.0, want));
    }
}

TEST_CASE("shifted depth bounds inside 20 M0 Q(z_k)") {
    Gen gen(71);
    for (double m0 : {1.0, 8.0}) {
        const double c = box_distance_slack(m0);
        for (int i = 0; i < 1000; ++i) {
            const DiscPoint zk = gen.point(1e-3);
            const CarlesonBox box = CarlesonBox::over(zk, 20.0 * m0);
            const DiscPoint zn = DiscPoint::from_depth(wrap_angle(zk.arg() + gen.uniform(-1, 1) * kPi * box.side),
                                                       std::min(zk.depth(), box.side) *
                                                           std::exp(gen.uniform(std::log(1e-8), 0.0)));
            if (!box_contains(box, zn)) continue;
            const double gamma = gen.uniform(0.001, 0.05);
            const DiscPoint p = shifted_point(zk, zn, gamma).point;
            const double ratio = zk.depth() / zn.depth();
            const double got = p.depth() / zn.depth();
            // |beta - log2 ratio| <= C and 2^{gamma beta - 1} <= got <= 2^{gamma beta + 1} on a radius.
            CHECK(got >= std::exp2(gamma * (std::log2(ratio) - c) - 1.0) * (1.0 - 1e-12));
            CHECK(got <= std::exp2(gamma * (std::log2(ratio) + c) + 1.0) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("choose_params") {
    const PointSequence r = radial_geometric(10);
    const ConstructionParams p = choose_params(r, {4.0, 0.5}, 0.2);
    CHECK(p.admissible());
    CHECK(p.shift_bound <= p.lambda);
    CHECK(p.near_far_bound <= p.delta / 3.0);
    CHECK(p.stolz_bound <= p.delta / 3.0);
    CHECK(p.lambda == doctest::Approx(0.2 / 25.0));
    // 1 - delta/100 - 2 lambda >= 1 - delta/10
    CHECK(p.delta / 100.0 + 2.0 * p.lambda <= p.delta / 10.0 + 1e-15);
    int prev = 0;
    for (double delta : {0.4, 0.2, 0.1, 0.05}) {
        const int n = choose_params(r, {4.0, 0.5}, delta).cap_n;
        CHECK(n >= prev);
        prev = n;
    }
    const auto pair = counterexample_pair(3);
    CHECK_THROWS_AS(choose_params(pair.combined, {8.0, 0.3}, 0.2), PreconditionError);
    CHECK_THROWS_AS(choose_params(r, {4.0, 0.5}, 1.5), InputError);
}

TEST_CASE("E sets") {
    const PointSequence r = radial_geometric(10);
    const ConstructionParams p = params_for(r, 0.2);
    const ESets e = build_e_sets(r, p);
    for (std::size_t k = 0; k < r.size(); ++k) {
        CHECK(e.coverage[k] >= 1.0 - p.delta / 10.0);
        CHECK(e.sets[k] == base_arc(r[k], p.m0));  // all pairs are closer than N
    }
}

TEST_CASE("E sets with far points, hand-set N and gamma") {
    // Two points on a radius, far apart compared with N = 4; gamma large enough
    // that the removed arc covers M0 I of the deeper point.
    const PointSequence s("far", {DiscPoint::from_depth(0.0, 0.5), DiscPoint::from_depth(0.0, std::ldexp(1.0, -40))});
    ConstructionParams p = params_for(s, 0.2);
    p.cap_n = 4;
    p.gamma = 0.4;
    const ESets e = build_e_sets(s, p, false);
    CHECK(e.sets[0].subset_of(base_arc(s[0], p.m0)));
    CHECK(e.sets[0].measure() < base_arc(s[0], p.m0).measure());
    CHECK(e.shifted_sum[0] > 0.0);
    CHECK(e.shifted_sum[1] == 0.0);
    CHECK(e.sets[1] == base_arc(s[1], p.m0));
    const GnFamily fam = build_gn(s, p, false);
    CHECK(fam.g[1] == fam.e[1]);
    CHECK(fam.g[0] == fam.e[0]);
    CHECK(fam.g[0].disjoint_from(fam.g[1]));
}

TEST_CASE("construction order") {
    const PointSequence s("mix", {DiscPoint::from_depth(0.5, 0.1), DiscPoint::from_depth(0.2, 0.3),
                                  DiscPoint::from_depth(-0.3, 0.1), DiscPoint::from_depth(0.0, 0.01)});
    const auto order = construction_order(s);
    CHECK(order == std::vector<std::size_t>{1, 2, 0, 3});
}

TEST_CASE("single node family") {
    const PointSequence one("one", {DiscPoint::cartesian(0.3, 0.2)});
    const ConstructionParams p = params_for(one, 0.2);
    const GnFamily fam = build_gn(one, p);
    CHECK(fam.g[0] == fam.e[0]);
    const EstimateReport est = verify_estimates(fam, one);
    CHECK(est.tail_sum[0] == 0.0);
    CHECK(est.cover_margin[0] >= p.delta - p.delta / 10.0 - 1e-12);
}

TEST_CASE("family invariants on desk sequences") {
    Gen gen(72);
    std::vector<PointSequence> seqs{radial_geometric(10), radial_geometric(6), dyadic_lattice(4, 2),
                                    gen.sequence(50, 0.99)};
    for (const auto& s : seqs) {
        const ConstructionParams p = params_for(s, 0.2, 0.9);
        const GnFamily fam = build_gn(s, p);
        const EstimateReport est = verify_estimates(fam, s);
        CHECK_MESSAGE(est.disjoint, s.label());
        CHECK_MESSAGE(est.nested, s.label());
        CHECK_MESSAGE(est.holds(0.2), s.label());
        for (std::size_t a = 0; a < s.size(); ++a) {
            for (std::size_t b = a + 1; b < s.size(); ++b) CHECK(fam.g[a].disjoint_from(fam.g[b]));
        }
        // Determinism.
        const GnFamily again = build_gn(s, p);
        CHECK(again.g == fam.g);
    }
}

TEST_CASE("bounded separation LP") {
    const PointSequence one("one", {DiscPoint::cartesian(0.2, 0.4)});
    const HInftyResult h1 = solve_hinfty_partition(one, 1u);
    CHECK(h1.level == doctest::Approx(1.0).epsilon(1e-9));

    const PointSequence two("two", {DiscPoint(), DiscPoint::cartesian(0.6, 0.0)});
    const HInftyResult h = solve_hinfty_partition(two, 0b01u);
    CHECK(h.level > 0.0);
    CHECK(h.resolved);
    // Independent evaluation of the piecewise-constant h by harmonic measure.
    for (std::size_t n = 0; n < 2; ++n) {
        double v = 0.0;
        for (std::size_t g = 0; g < h.grid.size(); ++g) {
            v += h.h[g] * harmonic_measure_interval(two[n], h.grid.cell_lo[g], h.grid.cell_hi[g]);
        }
        CHECK(v == doctest::Approx(h.at_nodes[n]).epsilon(1e-10));
    }
    CHECK(h.at_nodes[0] >= h.level - 1e-12);
    CHECK(h.at_nodes[1] <= -h.level + 1e-12);
    const HInftyResult swapped = solve_hinfty_partition(two, 0b10u);
    CHECK(swapped.level == doctest::Approx(h.level).epsilon(1e-7));
}

TEST_CASE("bounded separation level matches a quadrature search at small depth") {
    // Two radial points: the optimum is attained by h = sign(P_1 - c P_2); the
    // level 0.261979 was located by a 400001-point quadrature search over c.
    const HInftyResult h = solve_hinfty_partition(radial_geometric(2), 0b01u);
    CHECK(h.level == doctest::Approx(0.261979).epsilon(1e-5));
}

TEST_CASE("cell pieces cover an arc set exactly") {
    Gen gen(73);
    const Grid grid = build_grid({256, 8, {DiscPoint::from_depth(0.1, 0.01)}});
    for (int i = 0; i < 100; ++i) {
        const ArcSet a = gen.arc_set(gen.integer(1, 4));
        double total = 0.0;
        for (const CellPiece& pc : pieces_in_cells(a, grid)) {
            CHECK(pc.hi > pc.lo);
            total += pc.hi - pc.lo;
            const double mid = 0.5 * (pc.lo + pc.hi);
            const double lo = grid.cell_lo[pc.cell], hi = grid.cell_hi[pc.cell];
            const bool inside = (mid >= lo && mid < hi) || (mid - kTwoPi >= lo && mid - kTwoPi < hi);
            CHECK(inside);
        }
        CHECK(total == doctest::Approx(a.measure()).epsilon(1e-12));
    }
}

TEST_CASE("assembled u") {
    const PointSequence one("one", {DiscPoint::cartesian(0.4, 0.0)});
    GnFamily fam;
    fam.g = {ArcSet::full()};
    fam.e = fam.g;
    HInftyResult zero = solve_hinfty_partition(one, 1u);
    std::fill(zero.h.begin(), zero.h.end(), 0.0);
    const AssembledU u = assemble_u(one, {1.0}, fam, zero, 1u);
    CHECK(u.at_nodes[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(u.measure.total_mass() == doctest::Approx(1.0).epsilon(1e-12));

    const PointSequence r = radial_geometric(6);
    const ConstructionParams p = params_for(r, 0.2);
    const GnFamily f = build_gn(r, p);
    const std::uint32_t mask = alternating(r.size());
    const HInftyResult h = solve_hinfty_partition(r, mask);
    const double eps = std::min(p.eta, 0.02) / 2.0;
    const auto w = generate_compatible_values(r, eps, 3);
    const AssembledU a = assemble_u(r, w, f, h, mask);
    CHECK(a.all_satisfied);
    // The atomic measure reproduces the exact node values up to discretization.
    for (std::size_t n = 0; n < r.size(); ++n) {
        CHECK(poisson_integral(a.measure, r[n]) == doctest::Approx(a.at_nodes[n]).epsilon(1e-3));
    }
    std::vector<double> w2 = w;
    for (auto& v : w2) v *= 3.0;
    const AssembledU b = assemble_u(r, w2, f, h, mask);
    for (std::size_t n = 0; n < r.size(); ++n) CHECK(b.at_nodes[n] == doctest::Approx(3.0 * a.at_nodes[n]));
}

}  // TEST_SUITE
