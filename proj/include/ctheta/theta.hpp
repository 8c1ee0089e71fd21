#pragma once

#include "ctheta/characters.hpp"
#include "ctheta/graphs.hpp"
#include "ctheta/simplex.hpp"

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace ctheta {

struct CayleyGraphSpec {
    FiniteGroup group;
    ConnectionSet connection;
    bool conjugation_closed = false;

    explicit CayleyGraphSpec(const ConnectionSet& x)
        : group(x.group()), connection(x), conjugation_closed(x.conjugation_closed()) {}
};

// Where a row of the character LP comes from.
struct LpRowOrigin {
    enum class Kind { Normalization, RealPart, ImaginaryPart };
    Kind kind = Kind::Normalization;
    std::size_t cls = 0;  // conjugacy class for connection rows
};

// LP over the coefficients a_pi (one column per irrep, in table order):
//   maximize a_trivial
//   subject to  sum_pi d_pi^2 a_pi = |G|,
//               sum_pi d_pi a_pi chi_pi(C) = 0   for classes C in X,
//               a >= 0.
// One class is kept per inverse pair; complex rows are split into real and
// imaginary parts; zero rows and rows proportional to an earlier row are
// dropped.
struct CharacterLp {
    bool exact = true;
    std::variant<ExactLp, FloatLp> lp;
    std::vector<LpRowOrigin> rows;
    std::size_t objective_column = 0;

    std::size_t row_count() const { return rows.size(); }
    const ExactLp& exact_lp() const { return std::get<ExactLp>(lp); }
    const FloatLp& float_lp() const { return std::get<FloatLp>(lp); }
};

// Throws WrongFormulation when X is not a union of conjugacy classes.
CharacterLp build_lp_D(const CayleyGraphSpec& spec, const CharacterTable& table);

struct ThetaCertificate {
    Scalar objective;
    std::vector<std::string> irrep_labels;
    std::vector<Scalar> a;     // one per irrep
    ClassFunction f;           // f(C) = (1/|G|) sum_pi d_pi a_pi chi_pi(C)
    bool exact = true;
    std::vector<Scalar> dual;  // one per LP row
    std::size_t lp_rows = 0;
    std::size_t lp_cols = 0;
};

// Solves the character LP, rebuilds f, and refuses to return a certificate
// that fails validate_certificate.
ThetaCertificate solve_theta(const CayleyGraphSpec& spec, const CharacterTable& table);

inline constexpr double kCertificateTolerance = 1e-8;

// Recomputes every certificate identity from the table and the connection
// set; returns the first failed condition, or an empty string.
std::string validate_certificate(const CayleyGraphSpec& spec, const CharacterTable& table, const ThetaCertificate& cert);

void write_certificate_json(std::ostream& out, const CayleyGraphSpec& spec, const ThetaCertificate& cert);

// A(b, c) = f(b c^-1) / |G|: trace 1, entry sum theta, zero on edges.
DenseMatrix<Scalar> extract_matrix_solution(const ThetaCertificate& cert, std::size_t max_order = 2000);

// f(g) = sum_b A(g b, b), the group average of A read off at the identity.
// Throws InvalidArgument on non-Hermitian input.
GroupFunction symmetrize_matrix(const DenseMatrix<Scalar>& a, const FiniteGroup& group, std::size_t max_order = 2000);

// Semidefinite program in SDPA's dual form:
//   maximize F0 . Y  subject to  Fi . Y = ci (i = 1..m),  Y psd,
// where Y is block diagonal. Matrices are stored as upper-triangle entries.
struct SdpEntry {
    std::size_t block = 0;  // 0-based
    std::size_t row = 0;    // 0-based, row <= col
    std::size_t col = 0;
    double value = 0.0;

    friend bool operator==(const SdpEntry&, const SdpEntry&) = default;
    friend auto operator<=>(const SdpEntry&, const SdpEntry&) = default;
};

struct SdpMatrix {
    std::vector<SdpEntry> entries;  // sorted, no repeated positions, no zeros

    void add(std::size_t block, std::size_t row, std::size_t col, double value);
    void canonicalize();
    friend bool operator==(const SdpMatrix&, const SdpMatrix&) = default;
};

struct SdpInstance {
    std::vector<std::size_t> block_sizes;
    SdpMatrix objective;
    std::vector<SdpMatrix> constraints;
    std::vector<double> rhs;
    bool maximize = true;

    friend bool operator==(const SdpInstance&, const SdpInstance&) = default;
};

// One |G| x |G| block: maximize <J, A> subject to Tr A = 1 and A(u, v) = 0
// for every edge u < v of the Cayley graph.
SdpInstance build_sdp_A(const CayleyGraphSpec& spec, std::size_t max_order = 2000);

// One block per irrep. Blocks of degree >= 2 carrying non-real matrices are
// realified: the Hermitian d x d block X + iY becomes the symmetric 2d x 2d
// block [[X, -Y], [Y, X]], whose trace is twice Tr(A_pi); real blocks stay
// d x d. The objective is the trivial 1 x 1 block; rows are
//   sum_pi d_pi Tr(A_pi) = |G|  and, for one x of each pair {x, x^-1} in X,
//   Re and Im of sum_pi d_pi <A_pi, pi(x)> = 0, with <A, B> = Tr(A B*).
SdpInstance build_sdp_C(const CayleyGraphSpec& spec, const IrrepMatrices& irreps);

// SDPA sparse (.dat-s) text. The header carries a '*' comment stating the
// maximize convention above; values are printed with %.17g.
void write_sdpa(std::ostream& out, const SdpInstance& sdp);
void export_sdpa(const SdpInstance& sdp, const std::string& path);
SdpInstance read_sdpa(std::istream& in);

}  // namespace ctheta
