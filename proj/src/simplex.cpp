#include "ctheta/simplex.hpp"

#include "ctheta/errors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>

namespace ctheta {

std::string to_string(LpStatus status) {
    switch (status) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

template <class T>
struct Arith;

template <>
struct Arith<Rational> {
    static constexpr bool exact = true;
    static bool positive(const Rational& v) { return sgn(v) > 0; }
    static bool negative(const Rational& v) { return sgn(v) < 0; }
    static bool zero(const Rational& v) { return sgn(v) == 0; }
    static bool close(const Rational& a, const Rational& b) { return a == b; }
    static void normalize(Rational& v) { v.canonicalize(); }
    static std::string str(const Rational& v) { return to_string(v); }
};

template <>
struct Arith<double> {
    static constexpr bool exact = false;
    static bool positive(double v) { return v > kFloatLpTolerance; }
    static bool negative(double v) { return v < -kFloatLpTolerance; }
    static bool zero(double v) { return std::abs(v) <= kFloatLpTolerance; }
    static bool close(double a, double b) {
        return std::abs(a - b) <= kFloatLpTolerance * (1.0 + std::max(std::abs(a), std::abs(b)));
    }
    static void normalize(double&) {}
    static std::string str(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }
};

template <class T>
void check_dimensions(const LinearProgram<T>& lp) {
    if (lp.rows() == 0 || lp.cols() == 0) throw InvalidArgument("LP needs at least one row and one column");
    if (lp.b.size() != lp.rows()) throw InvalidArgument("LP right-hand side length differs from row count");
    if (lp.c.size() != lp.cols()) throw InvalidArgument("LP objective length differs from column count");
}

// Solves M y = rhs (M is r x s with full row rank r) by Gauss-Jordan
// elimination; free unknowns are set to zero.
template <class T>
std::vector<T> solve_full_row_rank(DenseMatrix<T> m, std::vector<T> rhs) {
    using A = Arith<T>;
    const std::size_t r = m.rows(), s = m.cols();
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < s && row < r; ++col) {
        std::size_t best = r;
        for (std::size_t i = row; i < r; ++i) {
            if (A::zero(m(i, col))) continue;
            if constexpr (A::exact) {
                best = i;
                break;
            } else {
                if (best == r || std::abs(m(i, col)) > std::abs(m(best, col))) best = i;
            }
        }
        if (best == r) continue;
        for (std::size_t k = 0; k < s; ++k) std::swap(m(row, k), m(best, k));
        std::swap(rhs[row], rhs[best]);
        const T inv = T(1) / m(row, col);
        for (std::size_t k = 0; k < s; ++k) m(row, k) *= inv;
        rhs[row] *= inv;
        for (std::size_t i = 0; i < r; ++i) {
            if (i == row || A::zero(m(i, col))) continue;
            const T factor = m(i, col);
            for (std::size_t k = 0; k < s; ++k) m(i, k) -= factor * m(row, k);
            rhs[i] -= factor * rhs[row];
        }
        pivot_col.push_back(col);
        ++row;
    }
    if (row < r) throw InternalError("basis matrix lost full rank");
    std::vector<T> y(s, T(0));
    for (std::size_t i = 0; i < r; ++i) {
        y[pivot_col[i]] = rhs[i];
        A::normalize(y[pivot_col[i]]);
    }
    return y;
}

// Solves A_B z = b for the basic columns of A (full column rank) with
// partially pivoted elimination on the original data.
std::vector<double> solve_basic_columns(const FloatLp& lp, const std::vector<std::size_t>& basis) {
    const std::size_t m = lp.rows(), r = basis.size();
    DenseMatrix<double> a(m, r);
    std::vector<double> rhs = lp.b;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < r; ++k) a(i, k) = lp.a(i, basis[k]);
    for (std::size_t k = 0; k < r; ++k) {
        std::size_t best = k;
        for (std::size_t i = k + 1; i < m; ++i)
            if (std::abs(a(i, k)) > std::abs(a(best, k))) best = i;
        if (std::abs(a(best, k)) <= kFloatLpTolerance) throw InternalError("basis columns lost full rank");
        for (std::size_t c = 0; c < r; ++c) std::swap(a(k, c), a(best, c));
        std::swap(rhs[k], rhs[best]);
        for (std::size_t i = k + 1; i < m; ++i) {
            const double factor = a(i, k) / a(k, k);
            if (factor == 0.0) continue;
            for (std::size_t c = k; c < r; ++c) a(i, c) -= factor * a(k, c);
            rhs[i] -= factor * rhs[k];
        }
    }
    std::vector<double> z(r);
    for (std::size_t k = r; k-- > 0;) {
        double v = rhs[k];
        for (std::size_t c = k + 1; c < r; ++c) v -= a(k, c) * z[c];
        z[k] = v / a(k, k);
    }
    return z;
}

template <class T>
class Tableau {
public:
    using A = Arith<T>;

    explicit Tableau(const LinearProgram<T>& lp) : m_(lp.rows()), n_(lp.cols()), t_(m_, n_ + m_ + 1, T(0)) {
        for (std::size_t i = 0; i < m_; ++i) {
            const bool flip = lp.b[i] < T(0);
            for (std::size_t j = 0; j < n_; ++j) t_(i, j) = flip ? T(-lp.a(i, j)) : lp.a(i, j);
            t_(i, n_ + i) = T(1);
            t_(i, rhs_col()) = flip ? T(-lp.b[i]) : lp.b[i];
            basis_.push_back(n_ + i);
        }
        if constexpr (!A::exact) {
            iteration_cap_ = 10 * (m_ + n_) * (m_ + n_);
        }
    }

    // Runs Bland pivots for the given cost vector over columns [0, limit).
    // Returns false when the objective is unbounded.
    bool optimize(const std::vector<T>& cost, std::size_t limit) {
        while (true) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < limit && !entering; ++j) {
                if (is_basic(j)) continue;
                T reduced = cost[j];
                for (std::size_t i = 0; i < rows(); ++i) {
                    if (!A::zero(t_(i, j))) reduced -= cost[basis_[i]] * t_(i, j);
                }
                if (A::positive(reduced)) entering = j;
            }
            if (!entering) return true;
            const std::size_t j = *entering;
            std::optional<std::size_t> leaving;
            T best_ratio{};
            for (std::size_t i = 0; i < rows(); ++i) {
                if (!A::positive(t_(i, j))) continue;
                T ratio = t_(i, rhs_col()) / t_(i, j);
                if (!leaving || (A::exact ? ratio < best_ratio : A::negative(ratio - best_ratio)) ||
                    ((A::exact ? ratio == best_ratio : A::close(ratio, best_ratio)) && basis_[i] < basis_[*leaving])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
            if (!leaving) return false;
            pivot(*leaving, j);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        ++iterations_;
        if (iteration_cap_ != 0 && iterations_ > iteration_cap_) {
            throw NumericalFailure("simplex exceeded " + std::to_string(iteration_cap_) + " iterations in float mode");
        }
        const std::size_t width = t_.cols();
        const T inv = T(1) / t_(row, col);
        for (std::size_t k = 0; k < width; ++k) {
            t_(row, k) *= inv;
            A::normalize(t_(row, k));
        }
        for (std::size_t i = 0; i < rows(); ++i) {
            if (i == row || A::zero(t_(i, col))) continue;
            const T factor = t_(i, col);
            for (std::size_t k = 0; k < width; ++k) {
                if (A::zero(t_(row, k))) continue;
                t_(i, k) -= factor * t_(row, k);
                A::normalize(t_(i, k));
            }
            if constexpr (!A::exact) t_(i, col) = 0.0;
        }
        basis_[row] = col;
    }

    // After Phase I: pivot zero-level artificials out of the basis, or drop
    // their rows when the constraint is redundant.
    void expel_artificials() {
        for (std::size_t i = 0; i < rows();) {
            if (basis_[i] < n_) {
                ++i;
                continue;
            }
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < n_ && !col; ++j) {
                if (!A::zero(t_(i, j))) col = j;
            }
            if (col) {
                pivot(i, *col);
                ++i;
            } else {
                drop_row(i);
            }
        }
    }

    T artificial_sum() const {
        T s(0);
        for (std::size_t i = 0; i < rows(); ++i)
            if (basis_[i] >= n_) s += t_(i, rhs_col());
        return s;
    }

    std::vector<T> primal() const {
        std::vector<T> x(n_, T(0));
        for (std::size_t i = 0; i < rows(); ++i)
            if (basis_[i] < n_) x[basis_[i]] = t_(i, rhs_col());
        return x;
    }

    const std::vector<std::size_t>& basis() const { return basis_; }
    std::size_t iterations() const { return iterations_; }
    std::size_t rows() const { return basis_.size(); }

private:
    std::size_t rhs_col() const { return n_ + m_; }
    bool is_basic(std::size_t j) const {
        for (std::size_t b : basis_)
            if (b == j) return true;
        return false;
    }
    void drop_row(std::size_t i) {
        DenseMatrix<T> next(t_.rows() - 1, t_.cols());
        for (std::size_t r = 0, w = 0; r < t_.rows(); ++r) {
            if (r == i) continue;
            for (std::size_t k = 0; k < t_.cols(); ++k) next(w, k) = t_(r, k);
            ++w;
        }
        t_ = std::move(next);
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
    }

    std::size_t m_, n_;
    DenseMatrix<T> t_;
    std::vector<std::size_t> basis_;
    std::size_t iterations_ = 0;
    std::size_t iteration_cap_ = 0;
};

template <class T>
LpSolution<T> solve_impl(const LinearProgram<T>& lp) {
    check_dimensions(lp);
    using A = Arith<T>;
    const std::size_t m = lp.rows(), n = lp.cols();
    Tableau<T> tab(lp);

    std::vector<T> phase1(n + m, T(0));
    for (std::size_t j = n; j < n + m; ++j) phase1[j] = T(-1);
    tab.optimize(phase1, n + m);

    LpSolution<T> sol;
    if (A::positive(tab.artificial_sum())) {
        sol.status = LpStatus::Infeasible;
        sol.iterations = tab.iterations();
        return sol;
    }
    tab.expel_artificials();

    std::vector<T> phase2(n + m, T(0));
    for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.c[j];
    const bool bounded = tab.optimize(phase2, n);
    sol.iterations = tab.iterations();
    sol.basis = tab.basis();
    if (!bounded) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }
    sol.status = LpStatus::Optimal;
    sol.x = tab.primal();
    if constexpr (!A::exact) {
        const std::vector<double> z = solve_basic_columns(lp, sol.basis);
        for (std::size_t k = 0; k < z.size(); ++k) sol.x[sol.basis[k]] = z[k];
        for (auto& v : sol.x)
            if (v < 0 && v > -kFloatLpTolerance) v = 0.0;
    }
    sol.objective = T(0);
    for (std::size_t j = 0; j < n; ++j) sol.objective += lp.c[j] * sol.x[j];

    // Dual multipliers: A_B^T y = c_B over all original rows.
    const std::size_t basic = sol.basis.size();
    DenseMatrix<T> system(basic, m);
    std::vector<T> rhs(basic);
    for (std::size_t k = 0; k < basic; ++k) {
        for (std::size_t i = 0; i < m; ++i) system(k, i) = lp.a(i, sol.basis[k]);
        rhs[k] = lp.c[sol.basis[k]];
    }
    sol.dual = solve_full_row_rank(std::move(system), std::move(rhs));

    if constexpr (!A::exact) {
        const auto check = verify_certificate(lp, sol);
        if (!check.ok) throw NumericalFailure("float simplex produced an unverifiable optimum: " + check.violation);
    }
    return sol;
}

template <class T>
CertificateCheck verify_impl(const LinearProgram<T>& lp, const LpSolution<T>& sol) {
    using A = Arith<T>;
    const std::size_t m = lp.rows(), n = lp.cols();
    if (sol.status != LpStatus::Optimal) return {false, "not optimal"};
    if (sol.x.size() != n || sol.dual.size() != m) return {false, "dimension mismatch"};
    for (std::size_t j = 0; j < n; ++j) {
        if (A::negative(sol.x[j])) return {false, "primal infeasible"};
    }
    for (std::size_t i = 0; i < m; ++i) {
        T lhs(0);
        for (std::size_t j = 0; j < n; ++j) lhs += lp.a(i, j) * sol.x[j];
        if (!A::close(lhs, lp.b[i])) return {false, "primal infeasible"};
    }
    std::vector<bool> basic(n, false);
    for (auto j : sol.basis) {
        if (j >= n) return {false, "basis index out of range"};
        basic[j] = true;
    }
    for (std::size_t j = 0; j < n; ++j) {
        T reduced = lp.c[j];
        for (std::size_t i = 0; i < m; ++i) reduced -= lp.a(i, j) * sol.dual[i];
        if (A::positive(reduced)) return {false, "dual infeasible"};
        if (basic[j] && !A::zero(reduced)) return {false, "complementary slackness"};
    }
    T primal(0), dual(0);
    for (std::size_t j = 0; j < n; ++j) primal += lp.c[j] * sol.x[j];
    for (std::size_t i = 0; i < m; ++i) dual += lp.b[i] * sol.dual[i];
    if (!A::close(primal, sol.objective) || !A::close(dual, sol.objective)) return {false, "duality gap"};
    return {};
}

template <class T>
void dump_impl(std::ostream& out, const LinearProgram<T>& lp, const char* mode) {
    using A = Arith<T>;
    out << "lp " << lp.rows() << ' ' << lp.cols() << ' ' << mode << '\n';
    out << "max";
    for (const auto& v : lp.c) out << ' ' << A::str(v);
    out << '\n';
    for (std::size_t i = 0; i < lp.rows(); ++i) {
        for (std::size_t j = 0; j < lp.cols(); ++j) out << (j == 0 ? "" : " ") << A::str(lp.a(i, j));
        out << " = " << A::str(lp.b[i]) << '\n';
    }
}

}  // namespace

LpSolution<Rational> solve(const ExactLp& lp) { return solve_impl(lp); }
LpSolution<double> solve(const FloatLp& lp) { return solve_impl(lp); }

CertificateCheck verify_certificate(const ExactLp& lp, const LpSolution<Rational>& solution) {
    return verify_impl(lp, solution);
}
CertificateCheck verify_certificate(const FloatLp& lp, const LpSolution<double>& solution) {
    return verify_impl(lp, solution);
}

void write_lp_dump(std::ostream& out, const ExactLp& lp) { dump_impl(out, lp, "exact"); }
void write_lp_dump(std::ostream& out, const FloatLp& lp) { dump_impl(out, lp, "float"); }

}  // namespace ctheta
