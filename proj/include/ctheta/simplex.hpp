#pragma once

// Primal simplex for   maximize c.x  subject to  A x = b,  x >= 0.
//
// Phase I minimizes the sum of artificial variables, Phase II optimizes the
// real objective; both use Bland's rule (lowest-index entering column with
// positive reduced cost, ratio-test ties broken by lowest basic index), so
// the exact path always terminates. The float path shares the code with
// comparisons at 1e-9 and an iteration cap of 10*(m+n)^2.

#include "ctheta/dense_matrix.hpp"
#include "ctheta/rational.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace ctheta {

template <class T>
struct LinearProgram {
    DenseMatrix<T> a;    // m x n
    std::vector<T> b;    // m
    std::vector<T> c;    // n

    std::size_t rows() const { return a.rows(); }
    std::size_t cols() const { return a.cols(); }
};

using ExactLp = LinearProgram<Rational>;
using FloatLp = LinearProgram<double>;

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus status);

template <class T>
struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<T> x;               // primal point (optimal only)
    T objective{};                  // c.x (optimal only)
    std::vector<T> dual;            // y with c - A^T y <= 0, zero on the basis
    std::vector<std::size_t> basis; // basic columns, in tableau row order
    std::size_t iterations = 0;
};

inline constexpr double kFloatLpTolerance = 1e-9;

// Throws InvalidArgument on inconsistent dimensions and, in float mode,
// NumericalFailure when the iteration cap is hit or the final certificate
// does not verify.
LpSolution<Rational> solve(const ExactLp& lp);
LpSolution<double> solve(const FloatLp& lp);

struct CertificateCheck {
    bool ok = true;
    std::string violation;  // "primal infeasible", "dual infeasible", ...
};

// Re-evaluates an optimal solution from scratch: x >= 0 and Ax = b, reduced
// costs c - A^T y <= 0 with equality on basic columns, and
// c.x = objective = b.y. Exact comparisons for rationals, 1e-9 for doubles.
CertificateCheck verify_certificate(const ExactLp& lp, const LpSolution<Rational>& solution);
CertificateCheck verify_certificate(const FloatLp& lp, const LpSolution<double>& solution);

// Debug dump: header "lp <rows> <cols> exact|float", a "max" line with the
// objective, then one "a_1 ... a_n = b" line per row; rationals as p/q.
void write_lp_dump(std::ostream& out, const ExactLp& lp);
void write_lp_dump(std::ostream& out, const FloatLp& lp);

}  // namespace ctheta
