#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hplus/simplex.hpp"

namespace hplus::lp {

namespace {

using Rational = mpq_class;

// Dense exact column j of the problem.
std::vector<Rational> exact_column(const Problem& p, int j) {
    std::vector<Rational> out(p.rows);
    if (j < p.dense_cols) {
        const double* a = p.dense->data() + static_cast<std::size_t>(j) * p.rows;
        for (int i = 0; i < p.rows; ++i) out[i] = a[i];
    } else {
        for (const auto& [i, v] : p.sparse[j - p.dense_cols].entries) out[i] += Rational(v);
    }
    return out;
}

Rational exact_dot(const Problem& p, int j, const std::vector<Rational>& y) {
    Rational s = 0;
    if (j < p.dense_cols) {
        const double* a = p.dense->data() + static_cast<std::size_t>(j) * p.rows;
        for (int i = 0; i < p.rows; ++i) {
            if (a[i] != 0.0 && sgn(y[i]) != 0) s += y[i] * Rational(a[i]);
        }
    } else {
        for (const auto& [i, v] : p.sparse[j - p.dense_cols].entries) s += y[i] * Rational(v);
    }
    return s;
}

// Sign of the reduced cost c_j - y.a_j. Decided in floating point when the
// rounding error bound allows it, in rational arithmetic otherwise.
int reduced_cost_sign(const Problem& p, int j, const std::vector<Rational>& y, const std::vector<double>& yd) {
    const double c = p.cost(j);
    double dot = 0.0, mag = std::abs(c);
    if (j < p.dense_cols) {
        const double* a = p.dense->data() + static_cast<std::size_t>(j) * p.rows;
        for (int i = 0; i < p.rows; ++i) {
            dot += yd[i] * a[i];
            mag += std::abs(yd[i] * a[i]);
        }
    } else {
        for (const auto& [i, v] : p.sparse[j - p.dense_cols].entries) {
            dot += yd[i] * v;
            mag += std::abs(yd[i] * v);
        }
    }
    const double d = c - dot;
    const double bound = (p.rows + 4) * std::ldexp(mag, -52) + 1e-300;
    if (d > bound) return 1;
    if (d < -bound) return -1;
    return sgn(Rational(c) - exact_dot(p, j, y));
}

// Exact LU of a square matrix with row pivoting: P B = L U.
class ExactLu {
public:
    explicit ExactLu(std::vector<std::vector<Rational>> rows) : a_(std::move(rows)), n_(static_cast<int>(a_.size())) {
        perm_.resize(n_);
        for (int i = 0; i < n_; ++i) perm_[i] = i;
        for (int c = 0; c < n_; ++c) {
            int piv = -1;
            for (int r = c; r < n_; ++r) {
                if (sgn(a_[r][c]) != 0) {
                    piv = r;
                    break;
                }
            }
            if (piv < 0) {
                singular_ = true;
                return;
            }
            std::swap(a_[piv], a_[c]);
            std::swap(perm_[piv], perm_[c]);
            for (int r = c + 1; r < n_; ++r) {
                if (sgn(a_[r][c]) == 0) continue;
                a_[r][c] /= a_[c][c];
                for (int k = c + 1; k < n_; ++k) {
                    if (sgn(a_[c][k]) != 0) a_[r][k] -= a_[r][c] * a_[c][k];
                }
            }
        }
    }

    bool singular() const { return singular_; }

    // B x = b
    std::vector<Rational> solve(const std::vector<Rational>& b) const {
        std::vector<Rational> x(n_);
        for (int i = 0; i < n_; ++i) {
            x[i] = b[perm_[i]];
            for (int k = 0; k < i; ++k) {
                if (sgn(a_[i][k]) != 0) x[i] -= a_[i][k] * x[k];
            }
        }
        for (int i = n_ - 1; i >= 0; --i) {
            for (int k = i + 1; k < n_; ++k) {
                if (sgn(a_[i][k]) != 0) x[i] -= a_[i][k] * x[k];
            }
            x[i] /= a_[i][i];
        }
        return x;
    }

    // B^T y = c
    std::vector<Rational> solve_transposed(const std::vector<Rational>& c) const {
        std::vector<Rational> s(n_);
        for (int i = 0; i < n_; ++i) {
            s[i] = c[i];
            for (int k = 0; k < i; ++k) {
                if (sgn(a_[k][i]) != 0) s[i] -= a_[k][i] * s[k];
            }
            s[i] /= a_[i][i];
        }
        for (int i = n_ - 1; i >= 0; --i) {
            for (int k = i + 1; k < n_; ++k) {
                if (sgn(a_[k][i]) != 0) s[i] -= a_[k][i] * s[k];
            }
        }
        std::vector<Rational> y(n_);
        for (int i = 0; i < n_; ++i) y[perm_[i]] = s[i];
        return y;
    }

private:
    std::vector<std::vector<Rational>> a_;
    int n_;
    std::vector<int> perm_;
    bool singular_ = false;
};

struct ExactBasis {
    std::vector<int> basis;
    std::vector<Rational> xb;
    std::vector<Rational> y;
};

std::optional<ExactBasis> factor_basis(const Problem& p, const std::vector<int>& basis) {
    const int m = p.rows;
    std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(m));
    for (int k = 0; k < m; ++k) {
        const auto col = exact_column(p, basis[k]);
        for (int i = 0; i < m; ++i) rows[i][k] = col[i];
    }
    ExactLu lu(std::move(rows));
    if (lu.singular()) return std::nullopt;
    std::vector<Rational> b(m), cb(m);
    for (int i = 0; i < m; ++i) {
        b[i] = p.rhs[i];
        cb[i] = p.cost(basis[i]);
    }
    return ExactBasis{basis, lu.solve(b), lu.solve_transposed(cb)};
}

std::vector<double> rounded(const std::vector<Rational>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_d();
    return out;
}

// Smallest-index column with negative reduced cost, or -1 at optimality.
int entering_column(const Problem& p, const std::vector<char>& basic, const std::vector<Rational>& y) {
    const std::vector<double> yd = rounded(y);
    for (int j = 0; j < p.columns(); ++j) {
        if (!basic[j] && reduced_cost_sign(p, j, y, yd) < 0) return j;
    }
    return -1;
}

Solution package(const Problem& p, const ExactBasis& eb, Status status, int iterations) {
    Solution sol;
    sol.status = status;
    sol.exact = status == Status::optimal;
    sol.iterations = iterations;
    sol.basis = eb.basis;
    sol.x.assign(p.columns(), 0.0);
    Rational obj = 0;
    for (int k = 0; k < p.rows; ++k) {
        sol.x[eb.basis[k]] = eb.xb[k].get_d();
        obj += Rational(p.cost(eb.basis[k])) * eb.xb[k];
    }
    sol.objective = obj.get_d();
    sol.dual = rounded(eb.y);
    return sol;
}

// Bland-rule revised simplex with an exact basis inverse, from a primal feasible basis.
Solution exact_primal(const Problem& p, std::vector<int> basis, int prior_iterations) {
    const int m = p.rows;
    // Explicit inverse from the factorization, one unit column at a time.
    std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(m));
    for (int k = 0; k < m; ++k) {
        const auto col = exact_column(p, basis[k]);
        for (int i = 0; i < m; ++i) rows[i][k] = col[i];
    }
    ExactLu lu(std::move(rows));
    if (lu.singular()) throw std::runtime_error("exact simplex received a singular basis");
    std::vector<std::vector<Rational>> binv(m, std::vector<Rational>(m));
    for (int i = 0; i < m; ++i) {
        std::vector<Rational> e(m);
        e[i] = 1;
        const auto col = lu.solve(e);
        for (int k = 0; k < m; ++k) binv[k][i] = col[k];
    }
    std::vector<Rational> xb(m);
    for (int k = 0; k < m; ++k) {
        for (int i = 0; i < m; ++i) xb[k] += binv[k][i] * Rational(p.rhs[i]);
    }
    std::vector<char> basic(p.columns(), 0);
    for (int j : basis) basic[j] = 1;

    int iterations = prior_iterations;
    while (true) {
        std::vector<Rational> y(m);
        for (int i = 0; i < m; ++i) {
            for (int k = 0; k < m; ++k) {
                if (sgn(binv[k][i]) != 0) y[i] += Rational(p.cost(basis[k])) * binv[k][i];
            }
        }
        const int q = entering_column(p, basic, y);
        if (q < 0) return package(p, {basis, xb, y}, Status::optimal, iterations);

        const auto col = exact_column(p, q);
        std::vector<Rational> alpha(m);
        for (int k = 0; k < m; ++k) {
            for (int i = 0; i < m; ++i) {
                if (sgn(col[i]) != 0) alpha[k] += binv[k][i] * col[i];
            }
        }
        int r = -1;
        Rational best;
        for (int k = 0; k < m; ++k) {
            if (sgn(alpha[k]) <= 0) continue;
            Rational ratio = xb[k] / alpha[k];
            if (r < 0 || ratio < best || (ratio == best && basis[k] < basis[r])) {
                best = ratio;
                r = k;
            }
        }
        if (r < 0) return package(p, {basis, xb, y}, Status::unbounded, iterations);
        ++iterations;

        for (int k = 0; k < m; ++k) {
            if (k != r) xb[k] -= best * alpha[k];
        }
        xb[r] = best;
        const Rational pr = alpha[r];
        for (int i = 0; i < m; ++i) binv[r][i] /= pr;
        for (int k = 0; k < m; ++k) {
            if (k == r || sgn(alpha[k]) == 0) continue;
            for (int i = 0; i < m; ++i) {
                if (sgn(binv[r][i]) != 0) binv[k][i] -= alpha[k] * binv[r][i];
            }
        }
        basic[basis[r]] = 0;
        basic[q] = 1;
        basis[r] = q;
    }
}

}  // namespace

Solution certify_exact(const Problem& problem, const Solution& approximate) {
    if (!certifiable(problem, problem.rows)) return approximate;
    bool usable = static_cast<int>(approximate.basis.size()) == problem.rows;
    for (int j : approximate.basis) usable = usable && j >= 0;

    if (usable) {
        if (auto eb = factor_basis(problem, approximate.basis)) {
            bool primal_ok = true;
            for (const auto& v : eb->xb) primal_ok = primal_ok && sgn(v) >= 0;
            if (primal_ok) {
                std::vector<char> basic(problem.columns(), 0);
                for (int j : eb->basis) basic[j] = 1;
                if (entering_column(problem, basic, eb->y) < 0) {
                    return package(problem, *eb, Status::optimal, approximate.iterations);
                }
                return exact_primal(problem, approximate.basis, approximate.iterations);
            }
        }
    }
    return exact_primal(problem, problem.initial_basis, approximate.iterations);
}

}  // namespace hplus::lp
