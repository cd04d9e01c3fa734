#pragma once

#include <limits>
#include <memory>
#include <utility>
#include <vector>

namespace hplus::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct SparseColumn {
    std::vector<std::pair<int, double>> entries;  // (row, coefficient)
    double cost = 0.0;
    double upper = kInf;
};

/**
 * minimize c.x  subject to  A x = b,  0 <= x <= upper.
 *
 * Columns 0 .. dense_cols-1 come from a shared column-major block (so many
 * problems over the same kernel matrix cost one copy); the sparse columns
 * follow. initial_basis[i] names a column whose only nonzero sits in row i,
 * or -1 when row i needs an artificial start.
 */
struct Problem {
    int rows = 0;
    int dense_cols = 0;
    std::shared_ptr<const std::vector<double>> dense;
    std::vector<double> dense_cost;   // empty means all zero
    std::vector<double> dense_upper;  // empty means unbounded
    std::vector<SparseColumn> sparse;
    std::vector<double> rhs;
    std::vector<int> initial_basis;

    int columns() const { return dense_cols + static_cast<int>(sparse.size()); }
    double cost(int j) const;
    double upper(int j) const;
    /// y . a_j
    double dot_column(int j, const double* y) const;
    /// Writes column j into out[0 .. rows).
    void column(int j, double* out) const;
};

enum class Status { optimal, infeasible, unbounded, iteration_limit };

struct Solution {
    Status status = Status::iteration_limit;
    std::vector<double> x;     // one value per column
    std::vector<double> dual;  // y with y.a_j <= c_j at optimality; the phase-one ray when infeasible
    double objective = 0.0;
    std::vector<int> basis;    // basic column per row; -1 marks an artificial
    int iterations = 0;
    bool exact = false;        // optimality verified in rational arithmetic
};

struct Options {
    int max_iterations = 0;  // 0 picks a size-based limit
    /// Run rational certification afterwards when the problem qualifies
    /// (at most exact_row_limit rows, no finite upper bounds, full initial basis).
    bool certify = false;
    int exact_row_limit = 12;
};

Solution solve(const Problem& problem, const Options& options = {});

/**
 * Re-checks a floating-point optimum in exact rational arithmetic and, if the
 * final basis turns out not to be optimal, finishes with an exact simplex.
 * Requires no finite upper bounds and a full initial basis; returns the input
 * unchanged otherwise.
 */
Solution certify_exact(const Problem& problem, const Solution& approximate);

bool certifiable(const Problem& problem, int row_limit);

}  // namespace hplus::lp
