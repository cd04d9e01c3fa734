#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <optional>

#include "doctest.h"
#include "hplus/simplex.hpp"
#include "support.hpp"

using namespace hplus;
using hplus::testing::Gen;

namespace {

lp::Problem dense_problem(int rows, const std::vector<double>& a, const std::vector<double>& cost,
                          const std::vector<double>& b) {
    lp::Problem p;
    p.rows = rows;
    p.dense_cols = static_cast<int>(a.size()) / rows;
    p.dense = std::make_shared<std::vector<double>>(a);
    p.dense_cost = cost;
    p.rhs = b;
    p.initial_basis.assign(rows, -1);
    return p;
}

// Minimum over all basic feasible solutions, by enumerating column subsets.
std::optional<double> vertex_oracle(int rows, const std::vector<double>& a, const std::vector<double>& cost,
                                    const std::vector<double>& b) {
    const int n = static_cast<int>(cost.size());
    std::optional<double> best;
    std::vector<int> pick(n, 0);
    std::fill(pick.end() - rows, pick.end(), 1);
    do {
        std::vector<int> cols;
        for (int j = 0; j < n; ++j) {
            if (pick[j]) cols.push_back(j);
        }
        // Gauss-Jordan on the square system.
        std::vector<std::vector<double>> m(rows, std::vector<double>(rows + 1));
        for (int i = 0; i < rows; ++i) {
            for (int k = 0; k < rows; ++k) m[i][k] = a[cols[k] * rows + i];
            m[i][rows] = b[i];
        }
        bool singular = false;
        for (int c = 0; c < rows && !singular; ++c) {
            int piv = c;
            for (int r = c + 1; r < rows; ++r) {
                if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
            }
            if (std::abs(m[piv][c]) < 1e-12) {
                singular = true;
                break;
            }
            std::swap(m[piv], m[c]);
            for (int r = 0; r < rows; ++r) {
                if (r == c) continue;
                const double f = m[r][c] / m[c][c];
                for (int k = c; k <= rows; ++k) m[r][k] -= f * m[c][k];
            }
        }
        if (singular) continue;
        double obj = 0.0;
        bool feasible = true;
        for (int k = 0; k < rows; ++k) {
            const double x = m[k][rows] / m[k][k];
            feasible = feasible && x >= -1e-9;
            obj += cost[cols[k]] * x;
        }
        if (feasible && (!best || obj < *best)) best = obj;
    } while (std::next_permutation(pick.begin(), pick.end()));
    return best;
}

}  // namespace

TEST_SUITE("simplex") {

TEST_CASE("small LP with a known optimum") {
    // min x0 + 2 x1 + 3 x2  s.t.  x0 + x1 + x2 = 1,  x1 - x2 = 0.2
    const lp::Problem p = dense_problem(2, {1, 0, 1, 1, 1, -1}, {1, 2, 3}, {1, 0.2});
    const lp::Solution s = lp::solve(p);
    REQUIRE(s.status == lp::Status::optimal);
    CHECK(s.objective == doctest::Approx(1.2));
    CHECK(s.x[0] == doctest::Approx(0.8));
    CHECK(s.x[1] == doctest::Approx(0.2));
}

TEST_CASE("upper bounds are respected") {
    // min -x0 - x1  s.t.  x0 + x1 + s = 3, x0 <= 1, x1 <= 1.5
    lp::Problem p = dense_problem(1, {1, 1}, {-1, -1}, {3});
    p.dense_upper = {1.0, 1.5};
    p.sparse.push_back({{{0, 1.0}}, 0.0, lp::kInf});
    p.initial_basis = {2};
    const lp::Solution s = lp::solve(p);
    REQUIRE(s.status == lp::Status::optimal);
    CHECK(s.objective == doctest::Approx(-2.5));
    CHECK(s.x[0] == doctest::Approx(1.0));
    CHECK(s.x[1] == doctest::Approx(1.5));
}

TEST_CASE("unbounded and infeasible problems") {
    const lp::Problem unb = dense_problem(1, {1, -1}, {-1, 0}, {1});
    CHECK(lp::solve(unb).status == lp::Status::unbounded);

    // x0 + x1 = 1 and x0 + x1 = 2 cannot both hold.
    const lp::Problem inf = dense_problem(2, {1, 1, 1, 1}, {0, 0}, {1, 2});
    const lp::Solution s = lp::solve(inf);
    REQUIRE(s.status == lp::Status::infeasible);
    // The phase-one dual separates b from the cone of the columns.
    const double yb = s.dual[0] * 1 + s.dual[1] * 2;
    CHECK(yb > 1e-9);
    CHECK(s.dual[0] + s.dual[1] <= 1e-12);
}

TEST_CASE("random LPs match vertex enumeration") {
    Gen gen(50);
    for (int t = 0; t < 200; ++t) {
        const int rows = gen.integer(1, 3), cols = gen.integer(rows + 1, 7);
        std::vector<double> a(rows * cols), cost(cols), x0(cols), b(rows, 0.0);
        for (auto& v : a) v = gen.uniform(-1.0, 2.0);
        for (auto& v : cost) v = gen.uniform(0.1, 2.0);
        for (auto& v : x0) v = gen.uniform(0.0, 1.0) < 0.5 ? 0.0 : gen.uniform(0.0, 1.0);
        for (int j = 0; j < cols; ++j) {
            for (int i = 0; i < rows; ++i) b[i] += a[j * rows + i] * x0[j];
        }
        const auto oracle = vertex_oracle(rows, a, cost, b);
        const lp::Solution s = lp::solve(dense_problem(rows, a, cost, b));
        if (!oracle) continue;
        REQUIRE(s.status == lp::Status::optimal);
        CHECK(s.objective == doctest::Approx(*oracle).epsilon(1e-8));
        for (int i = 0; i < rows; ++i) {
            double lhs = 0.0;
            for (int j = 0; j < cols; ++j) lhs += a[j * rows + i] * s.x[j];
            CHECK(lhs == doctest::Approx(b[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("exact certification confirms the floating-point optimum") {
    Gen gen(51);
    int exact = 0;
    for (int t = 0; t < 50; ++t) {
        const int rows = gen.integer(1, 4), cols = gen.integer(5, 30);
        lp::Problem p;
        p.rows = rows;
        p.dense_cols = cols;
        std::vector<double> a(rows * cols);
        for (auto& v : a) v = gen.uniform(0.0, 3.0);
        p.dense = std::make_shared<std::vector<double>>(a);
        for (int i = 0; i < rows; ++i) {
            const double w = gen.uniform(0.5, 2.0);
            p.sparse.push_back({{{i, 1.0}}, 1.0 / w, lp::kInf});
            p.sparse.push_back({{{i, -1.0}}, 1.0 / w, lp::kInf});
            p.rhs.push_back(gen.uniform(0.5, 3.0));
            p.initial_basis.push_back(cols + 2 * i);
        }
        REQUIRE(lp::certifiable(p, 12));
        lp::Options opt;
        opt.certify = true;
        const lp::Solution s = lp::solve(p, opt);
        REQUIRE(s.status == lp::Status::optimal);
        exact += s.exact;
        const lp::Solution plain = lp::solve(p);
        CHECK(s.objective == doctest::Approx(plain.objective).epsilon(1e-9));
        // Dual feasibility: y.a_j <= c_j up to rounding.
        for (int j = 0; j < p.columns(); ++j) CHECK(p.dot_column(j, s.dual.data()) <= p.cost(j) + 1e-9);
    }
    CHECK(exact == 50);
}

}  // TEST_SUITE
