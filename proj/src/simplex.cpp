#include "hplus/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hplus::lp {

double Problem::cost(int j) const {
    if (j < dense_cols) return dense_cost.empty() ? 0.0 : dense_cost[j];
    return sparse[j - dense_cols].cost;
}

double Problem::upper(int j) const {
    if (j < dense_cols) return dense_upper.empty() ? kInf : dense_upper[j];
    return sparse[j - dense_cols].upper;
}

double Problem::dot_column(int j, const double* y) const {
    double s = 0.0;
    if (j < dense_cols) {
        const double* a = dense->data() + static_cast<std::size_t>(j) * rows;
        for (int i = 0; i < rows; ++i) s += y[i] * a[i];
    } else {
        for (const auto& [i, v] : sparse[j - dense_cols].entries) s += y[i] * v;
    }
    return s;
}

void Problem::column(int j, double* out) const {
    std::fill(out, out + rows, 0.0);
    if (j < dense_cols) {
        const double* a = dense->data() + static_cast<std::size_t>(j) * rows;
        std::copy(a, a + rows, out);
    } else {
        for (const auto& [i, v] : sparse[j - dense_cols].entries) out[i] += v;
    }
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr int kRefactorEvery = 50;
constexpr int kDegenerateLimit = 50;

class Engine {
public:
    explicit Engine(const Problem& p) : p_(p), m_(p.rows), n_(p.columns()) {
        bscale_ = 1.0;
        for (double b : p.rhs) bscale_ = std::max(bscale_, std::abs(b));
        ftol_ = 1e-10 * bscale_;

        colmax_.resize(n_);
        norm_.resize(n_);
        std::vector<double> col(m_);
        for (int j = 0; j < n_; ++j) {
            p_.column(j, col.data());
            double mx = 0.0, sq = 1.0;
            for (double v : col) {
                mx = std::max(mx, std::abs(v));
                sq += v * v;
            }
            colmax_[j] = mx;
            norm_[j] = std::sqrt(sq);
        }

        basis_.assign(m_, -1);
        for (int i = 0; i < m_; ++i) {
            const int j = i < static_cast<int>(p.initial_basis.size()) ? p.initial_basis[i] : -1;
            if (j >= 0) {
                p_.column(j, col.data());
                if (col[i] != 0.0 && p.rhs[i] / col[i] >= 0.0) {
                    basis_[i] = j;
                    continue;
                }
            }
            art_row_.push_back(i);
            art_sign_.push_back(p.rhs[i] < 0.0 ? -1.0 : 1.0);
            basis_[i] = n_ + static_cast<int>(art_row_.size()) - 1;
        }
        total_ = n_ + static_cast<int>(art_row_.size());
        where_.assign(total_, -1);
        for (int i = 0; i < m_; ++i) where_[basis_[i]] = i;
        at_upper_.assign(total_, 0);
        cost_.resize(total_);
        upper_.resize(total_);
        for (int j = 0; j < n_; ++j) upper_[j] = p.upper(j);
        for (int k = 0; k < artificials(); ++k) {
            colmax_.push_back(1.0);
            norm_.push_back(std::sqrt(2.0));
            upper_[n_ + k] = kInf;
        }
        binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
        xb_.assign(m_, 0.0);
        y_.assign(m_, 0.0);
        alpha_.assign(m_, 0.0);
    }

    int artificials() const { return static_cast<int>(art_row_.size()); }

    Solution run_all(int max_iterations) {
        refactor();
        if (artificials() > 0) {
            for (int j = 0; j < total_; ++j) cost_[j] = j < n_ ? 0.0 : 1.0;
            const Status st = iterate(max_iterations);
            if (st != Status::optimal) return finish(st);
            double infeas = 0.0;
            for (int i = 0; i < m_; ++i) {
                if (basis_[i] >= n_) infeas += std::max(0.0, xb_[i]);
            }
            if (infeas > ftol_ * m_) {
                compute_dual();
                return finish(Status::infeasible);
            }
            for (int k = 0; k < artificials(); ++k) upper_[n_ + k] = 0.0;
        }
        for (int j = 0; j < total_; ++j) cost_[j] = j < n_ ? p_.cost(j) : 0.0;
        const Status st = iterate(max_iterations);
        return finish(st);
    }

private:
    double dot(int j, const double* y) const {
        if (j < n_) return p_.dot_column(j, y);
        const int k = j - n_;
        return art_sign_[k] * y[art_row_[k]];
    }

    void column(int j, double* out) const {
        if (j < n_) {
            p_.column(j, out);
            return;
        }
        std::fill(out, out + m_, 0.0);
        out[art_row_[j - n_]] = art_sign_[j - n_];
    }

    void refactor() {
        std::vector<double> b(static_cast<std::size_t>(m_) * m_);
        std::vector<double> col(m_);
        for (int k = 0; k < m_; ++k) {
            column(basis_[k], col.data());
            for (int i = 0; i < m_; ++i) b[static_cast<std::size_t>(i) * m_ + k] = col[i];
        }
        // Gauss-Jordan on [B | I] with partial pivoting.
        std::vector<double>& inv = binv_;
        std::fill(inv.begin(), inv.end(), 0.0);
        for (int i = 0; i < m_; ++i) inv[static_cast<std::size_t>(i) * m_ + i] = 1.0;
        for (int c = 0; c < m_; ++c) {
            int piv = c;
            for (int r = c + 1; r < m_; ++r) {
                if (std::abs(b[r * m_ + c]) > std::abs(b[piv * m_ + c])) piv = r;
            }
            if (std::abs(b[piv * m_ + c]) < 1e-300) throw std::runtime_error("simplex basis became singular");
            if (piv != c) {
                for (int k = 0; k < m_; ++k) {
                    std::swap(b[piv * m_ + k], b[c * m_ + k]);
                    std::swap(inv[piv * m_ + k], inv[c * m_ + k]);
                }
            }
            const double d = b[c * m_ + c];
            for (int k = 0; k < m_; ++k) {
                b[c * m_ + k] /= d;
                inv[c * m_ + k] /= d;
            }
            for (int r = 0; r < m_; ++r) {
                if (r == c) continue;
                const double f = b[r * m_ + c];
                if (f == 0.0) continue;
                for (int k = 0; k < m_; ++k) {
                    b[r * m_ + k] -= f * b[c * m_ + k];
                    inv[r * m_ + k] -= f * inv[c * m_ + k];
                }
            }
        }
        // Rows of B^{-1} follow basis positions: inv above is B^{-1} with row k for basis slot k.
        std::vector<double> rhs(p_.rhs.begin(), p_.rhs.end());
        for (int j = 0; j < total_; ++j) {
            if (!at_upper_[j]) continue;
            column(j, col.data());
            for (int i = 0; i < m_; ++i) rhs[i] -= upper_[j] * col[i];
        }
        for (int k = 0; k < m_; ++k) {
            double s = 0.0;
            for (int i = 0; i < m_; ++i) s += inv[static_cast<std::size_t>(k) * m_ + i] * rhs[i];
            xb_[k] = s;
        }
    }

    void compute_dual() {
        for (int i = 0; i < m_; ++i) {
            double s = 0.0;
            for (int k = 0; k < m_; ++k) s += cost_[basis_[k]] * binv_[static_cast<std::size_t>(k) * m_ + i];
            y_[i] = s;
        }
    }

    Status iterate(int max_iterations) {
        int degenerate = 0;
        bool bland = false;
        std::vector<double> col(m_);
        while (true) {
            if (iterations_ >= max_iterations) return Status::iteration_limit;
            if (iterations_ % kRefactorEvery == 0) refactor();
            compute_dual();
            double ymax = 0.0;
            for (double v : y_) ymax = std::max(ymax, std::abs(v));

            int q = -1;
            double best = 0.0;
            for (int j = 0; j < total_; ++j) {
                if (where_[j] >= 0 || upper_[j] == 0.0) continue;
                const double d = cost_[j] - dot(j, y_.data());
                const double tol = 1e-11 * (std::abs(cost_[j]) + ymax * colmax_[j]) + 1e-14;
                const bool eligible = at_upper_[j] ? d > tol : d < -tol;
                if (!eligible) continue;
                if (bland) {
                    q = j;
                    break;
                }
                const double score = std::abs(d) / norm_[j];
                if (score > best) {
                    best = score;
                    q = j;
                }
            }
            if (q < 0) return Status::optimal;

            column(q, col.data());
            for (int k = 0; k < m_; ++k) {
                double s = 0.0;
                for (int i = 0; i < m_; ++i) s += binv_[static_cast<std::size_t>(k) * m_ + i] * col[i];
                alpha_[k] = s;
            }
            const double dir = at_upper_[q] ? -1.0 : 1.0;

            auto exact_ratio = [&](int k, double delta) {
                if (delta > 0.0) return std::max(0.0, xb_[k]) / delta;
                const double ub = upper_[basis_[k]];
                return std::max(0.0, ub - xb_[k]) / -delta;
            };
            auto blocks = [&](int k, double delta) {
                return delta > kPivotTol || (delta < -kPivotTol && std::isfinite(upper_[basis_[k]]));
            };

            int r = -1;
            double t = kInf;
            if (bland) {
                for (int k = 0; k < m_; ++k) {
                    const double delta = dir * alpha_[k];
                    if (!blocks(k, delta)) continue;
                    const double ratio = exact_ratio(k, delta);
                    if (ratio < t || (ratio == t && r >= 0 && basis_[k] < basis_[r])) {
                        t = ratio;
                        r = k;
                    }
                }
            } else {
                double tmax = kInf;
                for (int k = 0; k < m_; ++k) {
                    const double delta = dir * alpha_[k];
                    if (!blocks(k, delta)) continue;
                    const double slack = delta > 0.0 ? xb_[k] + ftol_ : upper_[basis_[k]] - xb_[k] + ftol_;
                    tmax = std::min(tmax, std::max(0.0, slack) / std::abs(delta));
                }
                double size = 0.0;
                for (int k = 0; k < m_; ++k) {
                    const double delta = dir * alpha_[k];
                    if (!blocks(k, delta)) continue;
                    const double ratio = exact_ratio(k, delta);
                    if (ratio <= tmax && std::abs(delta) > size) {
                        size = std::abs(delta);
                        r = k;
                        t = ratio;
                    }
                }
            }

            const double flip = upper_[q];
            if (r < 0 && !std::isfinite(flip)) return Status::unbounded;
            ++iterations_;
            if (r < 0 || flip <= t) {
                for (int k = 0; k < m_; ++k) xb_[k] -= dir * flip * alpha_[k];
                at_upper_[q] = !at_upper_[q];
                degenerate = 0;
                bland = false;
                continue;
            }

            if (t * best > 0.0 || (bland && t > 0.0)) {
                degenerate = 0;
                bland = false;
            } else if (++degenerate > kDegenerateLimit) {
                bland = true;
            }

            const double start = at_upper_[q] ? upper_[q] : 0.0;
            for (int k = 0; k < m_; ++k) xb_[k] -= dir * t * alpha_[k];
            const int leaving = basis_[r];
            at_upper_[leaving] = dir * alpha_[r] < 0.0 ? 1 : 0;
            where_[leaving] = -1;
            at_upper_[q] = 0;
            basis_[r] = q;
            where_[q] = r;
            xb_[r] = start + dir * t;

            const double pr = alpha_[r];
            double* row_r = binv_.data() + static_cast<std::size_t>(r) * m_;
            for (int i = 0; i < m_; ++i) row_r[i] /= pr;
            for (int k = 0; k < m_; ++k) {
                if (k == r || alpha_[k] == 0.0) continue;
                double* row_k = binv_.data() + static_cast<std::size_t>(k) * m_;
                const double f = alpha_[k];
                for (int i = 0; i < m_; ++i) row_k[i] -= f * row_r[i];
            }
        }
    }

    Solution finish(Status st) {
        Solution sol;
        sol.status = st;
        sol.iterations = iterations_;
        sol.x.assign(n_, 0.0);
        for (int j = 0; j < n_; ++j) {
            if (at_upper_[j]) sol.x[j] = upper_[j];
        }
        sol.basis.resize(m_);
        for (int k = 0; k < m_; ++k) {
            const int j = basis_[k];
            sol.basis[k] = j < n_ ? j : -1;
            if (j < n_) sol.x[j] = std::clamp(xb_[k], 0.0, upper_[j]);
        }
        if (st != Status::infeasible) compute_dual();
        sol.dual = y_;
        double obj = 0.0;
        for (int j = 0; j < n_; ++j) obj += p_.cost(j) * sol.x[j];
        sol.objective = obj;
        return sol;
    }

    const Problem& p_;
    int m_;
    int n_;
    int total_ = 0;
    int iterations_ = 0;
    double bscale_ = 1.0;
    double ftol_ = 0.0;
    std::vector<int> art_row_;
    std::vector<double> art_sign_;
    std::vector<double> colmax_;
    std::vector<double> norm_;
    std::vector<double> cost_;
    std::vector<double> upper_;
    std::vector<int> basis_;
    std::vector<int> where_;
    std::vector<char> at_upper_;
    std::vector<double> binv_;
    std::vector<double> xb_;
    std::vector<double> y_;
    std::vector<double> alpha_;
};

}  // namespace

bool certifiable(const Problem& problem, int row_limit) {
    if (problem.rows > row_limit) return false;
    for (int j = 0; j < problem.columns(); ++j) {
        if (std::isfinite(problem.upper(j))) return false;
    }
    if (static_cast<int>(problem.initial_basis.size()) != problem.rows) return false;
    std::vector<double> col(problem.rows);
    for (int i = 0; i < problem.rows; ++i) {
        const int j = problem.initial_basis[i];
        if (j < 0) return false;
        problem.column(j, col.data());
        for (int k = 0; k < problem.rows; ++k) {
            if (k != i && col[k] != 0.0) return false;
        }
        if (col[i] == 0.0 || problem.rhs[i] / col[i] < 0.0) return false;
    }
    return true;
}

Solution solve(const Problem& problem, const Options& options) {
    if (problem.rows <= 0) throw std::invalid_argument("LP needs at least one row");
    if (static_cast<int>(problem.rhs.size()) != problem.rows) throw std::invalid_argument("LP rhs size mismatch");
    const int limit = options.max_iterations > 0 ? options.max_iterations : 50 * (problem.rows + problem.columns()) + 1000;
    Engine engine(problem);
    Solution sol = engine.run_all(limit);
    if (options.certify && sol.status == Status::optimal && certifiable(problem, options.exact_row_limit)) {
        sol = certify_exact(problem, sol);
    }
    return sol;
}

}  // namespace hplus::lp
