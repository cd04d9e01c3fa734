#include <cmath>
#include <random>

#include "doctest.h"
#include "hplus/errors.hpp"
#include "hplus/interp_solver.hpp"
#include "hplus/sequence_gallery.hpp"
#include "support.hpp"

using namespace hplus;
using hplus::testing::Gen;

namespace {

PointSequence harnack_pair() { return {"pair", {DiscPoint(), DiscPoint::cartesian(1.0 / 3.0, 0.0)}}; }

// <x, w> > 0 and x . (2pi P_{z_n}(theta_g))_n <= 1e-9 on every grid angle.
bool certificate_valid(const InterpolationProblem& p, const InterpolationResult& r, const GridSpec& spec = {}) {
    if (r.certificate.size() != p.seq.size()) return false;
    double xw = 0.0;
    for (std::size_t n = 0; n < p.seq.size(); ++n) xw += r.certificate[n] * p.values[n];
    if (!(xw > 0.0)) return false;
    const Grid grid = build_grid(grid_for(p.seq, spec));
    for (double t : grid.angles) {
        double s = 0.0;
        for (std::size_t n = 0; n < p.seq.size(); ++n) s += r.certificate[n] * kTwoPi * poisson_kernel(p.seq[n], t);
        if (s > 1e-9) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("interp_solver") {

TEST_CASE("problem validation") {
    const PointSequence s = harnack_pair();
    CHECK_THROWS_AS((InterpolationProblem{s, {1.0}}.validate()), InputError);
    CHECK_THROWS_AS((InterpolationProblem{s, {1.0, -2.0}}.validate()), InputError);
    CHECK_THROWS_AS((InterpolationProblem{s, {1.0, 2.0}, 1.0, 0.1}.validate()), InputError);
    CHECK_NOTHROW((InterpolationProblem{s, {1.0, 2.0}}.validate()));
}

TEST_CASE("compatibility examples") {
    const PointSequence s = harnack_pair();
    for (double eps : {0.01, 0.5, 1.0}) CHECK(check_compatibility({s, {3.0, 3.0}, eps}).ok);
    const double eps = 0.3;
    const CompatibilityResult eq = check_compatibility({s, {1.0, std::exp2(eps)}, eps});
    CHECK(eq.ok);
    CHECK(eq.worst_ratio == doctest::Approx(1.0));
    const CompatibilityResult bad = check_compatibility({s, {1.0, 3.0}, 1.0});
    CHECK_FALSE(bad.ok);
    CHECK(bad.first == 0);
    CHECK(bad.second == 1);
}

TEST_CASE("generated values are compatible") {
    const PointSequence r = radial_geometric(8);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const double eps = 0.05 + 0.009 * static_cast<double>(seed);
        CHECK(check_compatibility({r, generate_compatible_values(r, eps, seed), eps}).ok);
    }
    // Single node: w = 2^{eps c} with c uniform on [0, 1).
    const PointSequence one("one", {DiscPoint::cartesian(0.2, 0.1)});
    std::mt19937_64 rng(9);
    const double c = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    CHECK(generate_compatible_values(one, 0.5, 9)[0] == doctest::Approx(std::exp2(0.5 * c)));
}

TEST_CASE("single node is feasible with zero residual") {
    const InterpolationProblem p{{"one", {DiscPoint()}}, {5.0}};
    const InterpolationResult r = solve_direct(p);
    REQUIRE(r.status == Feasibility::feasible);
    CHECK(r.measure->total_mass() == doctest::Approx(5.0));
    CHECK(r.residuals[0] < 1e-12);
    CHECK(solve_by_partitions(p).feasible);
}

TEST_CASE("Harnack-violating pair is infeasible with a certificate") {
    const InterpolationProblem p{harnack_pair(), {1.0, 3.0}};
    const InterpolationResult r = solve_direct(p);
    REQUIRE(r.status == Feasibility::infeasible);
    CHECK(certificate_valid(p, r));
    CHECK(r.exact);
    CHECK_FALSE(r.in_t[0]);
    CHECK(r.in_t[1]);
    const PartitionResult pr = solve_by_partitions(p);
    CHECK_FALSE(pr.feasible);
    REQUIRE(pr.failing_mask.has_value());
    CHECK(*pr.failing_mask == 0b10u);
}

TEST_CASE("feasible answers re-evaluate within tolerance") {
    Gen gen(60);
    int feasible = 0;
    for (int t = 0; t < 20; ++t) {
        const PointSequence s = gen.sequence(gen.integer(2, 8), 0.95);
        const InterpolationProblem p{s, generate_compatible_values(s, 0.1, t), 0.1};
        const InterpolationResult r = solve_direct(p);
        if (r.status == Feasibility::feasible) {
            ++feasible;
            for (std::size_t n = 0; n < s.size(); ++n) {
                const double u = poisson_integral(*r.measure, s[n]);
                CHECK(std::abs(u - p.values[n]) / p.values[n] <= p.tolerance);
            }
        } else {
            CHECK(certificate_valid(p, r));
        }
    }
    CHECK(feasible > 0);
}

TEST_CASE("radial sequence with seeded values") {
    const PointSequence r = radial_geometric(8);
    for (int seed = 0; seed < 20; ++seed) {
        const InterpolationProblem p{r, generate_compatible_values(r, 0.02, seed), 0.02};
        CHECK(solve_direct(p).status == Feasibility::feasible);
    }
    // At eps = 0.05 some offset draws are not interpolable; those verdicts must
    // carry a valid certificate and survive a four times finer grid.
    GridSpec fine;
    fine.resolution *= 4;
    fine.refinement *= 4;
    int infeasible = 0;
    for (int seed = 0; seed < 20; ++seed) {
        const InterpolationProblem p{r, generate_compatible_values(r, 0.05, seed), 0.05};
        const InterpolationResult res = solve_direct(p);
        if (res.status == Feasibility::feasible) continue;
        ++infeasible;
        CHECK(certificate_valid(p, res));
        const InterpolationResult refined = solve_direct(p, fine);
        CHECK(refined.status == Feasibility::infeasible);
        CHECK(certificate_valid(p, refined, fine));
    }
    CHECK(infeasible <= 4);
}

TEST_CASE("direct and partition answers agree") {
    Gen gen(61);
    for (int t = 0; t < 15; ++t) {
        const PointSequence s = gen.sequence(gen.integer(1, 6), 0.95);
        const double eps = gen.uniform(0.05, 0.6);
        const InterpolationProblem p{s, generate_compatible_values(s, eps, 100 + t), eps};
        CHECK((solve_direct(p).status == Feasibility::feasible) == solve_by_partitions(p).feasible);
    }
}

TEST_CASE("partition enumeration is capped") {
    Gen gen(62);
    const PointSequence s = gen.sequence(21, 0.95);
    CHECK_THROWS_AS(solve_by_partitions({s, std::vector<double>(21, 1.0)}), InputError);
}

TEST_CASE("scaling values preserves the verdict and scales the measure") {
    Gen gen(63);
    for (int t = 0; t < 8; ++t) {
        const PointSequence s = gen.sequence(5, 0.9);
        const InterpolationProblem p{s, generate_compatible_values(s, 0.3, t), 0.3};
        InterpolationProblem q = p;
        for (auto& v : q.values) v *= 7.5;
        const InterpolationResult a = solve_direct(p), b = solve_direct(q);
        CHECK(a.status == b.status);
        if (a.status == Feasibility::feasible) {
            CHECK(b.measure->total_mass() == doctest::Approx(7.5 * a.measure->total_mass()).epsilon(1e-7));
        }
    }
}

TEST_CASE("moving the nodes by an automorphism preserves the verdict") {
    Gen gen(64);
    for (int t = 0; t < 8; ++t) {
        const PointSequence s = gen.sequence(5, 0.8);
        const Automorphism tau = mobius_to_origin(gen.bounded_point(0.6));
        std::vector<DiscPoint> moved;
        for (const auto& z : s.points()) moved.push_back(tau.apply(z));
        const auto w = generate_compatible_values(s, 0.3, t);
        const InterpolationResult a = solve_direct({s, w, 0.3});
        const InterpolationResult b = solve_direct({{"moved", moved}, w, 0.3});
        CHECK(a.status == b.status);
    }
}

TEST_CASE("epsilon profile") {
    const auto prof = epsilon_profile({"one", {DiscPoint()}}, {}, 3, {0.1, 0.5, 1.0}, 5);
    for (const auto& pt : prof) CHECK(pt.rate() == 1.0);
    const auto radial = epsilon_profile(radial_geometric(6), {}, 5, {0.001}, 5);
    CHECK(radial[0].rate() == 1.0);
}

}  // TEST_SUITE
