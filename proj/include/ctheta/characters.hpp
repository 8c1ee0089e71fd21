#pragma once

#include "ctheta/dense_matrix.hpp"
#include "ctheta/groups.hpp"
#include "ctheta/scalar.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ctheta {

// Irreducible characters x conjugacy classes. Columns always follow the
// class order of the owning group (identity class first).
class CharacterTable {
public:
    // Validates every table invariant; throws CorruptTable naming the first
    // violated relation.
    CharacterTable(FiniteGroup group, std::vector<std::string> irrep_labels, std::vector<std::uint64_t> degrees,
                   DenseMatrix<Scalar> entries);

    const FiniteGroup& group() const { return group_; }
    std::size_t irrep_count() const { return degrees_.size(); }
    std::size_t class_count() const { return entries_.cols(); }
    const std::vector<std::string>& irrep_labels() const { return irrep_labels_; }
    const std::vector<std::uint64_t>& degrees() const { return degrees_; }
    std::uint64_t degree(std::size_t irrep) const { return degrees_[irrep]; }
    const Scalar& entry(std::size_t irrep, std::size_t cls) const { return entries_(irrep, cls); }
    const DenseMatrix<Scalar>& entries() const { return entries_; }
    std::size_t trivial_index() const { return trivial_index_; }
    bool exact() const { return exact_; }

    // Index of the irrep with the given label; throws InvalidArgument.
    std::size_t irrep_index(const std::string& label) const;

    friend bool operator==(const CharacterTable& a, const CharacterTable& b);

private:
    FiniteGroup group_;
    std::vector<std::string> irrep_labels_;
    std::vector<std::uint64_t> degrees_;
    DenseMatrix<Scalar> entries_;
    std::size_t trivial_index_ = 0;
    bool exact_ = true;
};

// Returns an empty string when the table satisfies: sum of squared degrees
// equals |G|, identity column equals the degrees, a trivial row exists, and
// both orthogonality relations hold (exactly, or within 1e-8*|G|).
std::string check_character_table(const FiniteGroup& group, const std::vector<std::uint64_t>& degrees,
                                  const DenseMatrix<Scalar>& entries);

// Class multiplication coefficients predicted by the table must match the
// counts in the group's multiplication. Empty string on success.
std::string check_structure_constants(const CharacterTable& table);

CharacterTable abelian_character_table(const FiniteGroup& group);
CharacterTable symmetric_character_table(const FiniteGroup& group);
CharacterTable symmetric_character_table(int n);

// chi_lambda(mu) by the Murnaghan-Nakayama rule (memo local to the call).
long long murnaghan_nakayama(const Partition& lambda, const Partition& mu);
// Number of standard Young tableaux of shape lambda.
std::uint64_t hook_length_degree(const Partition& lambda);

// JSON table file; see README for the schema.
CharacterTable read_character_table(std::istream& in, const FiniteGroup& group);
CharacterTable read_character_table_file(const std::string& path, const FiniteGroup& group);
void write_character_table(std::ostream& out, const CharacterTable& table);

struct ClassFunction {
    FiniteGroup group;
    std::vector<Scalar> values;  // one per class, in group class order

    static ClassFunction constant(const FiniteGroup& group, const Scalar& value);
    static ClassFunction delta_identity(const FiniteGroup& group);
    const Scalar& operator[](std::size_t cls) const { return values[cls]; }
};

struct GroupFunction {
    FiniteGroup group;
    std::vector<Scalar> values;  // one per element

    static GroupFunction from_class_function(const ClassFunction& f);
    // Throws InvalidArgument when f is not constant on classes.
    ClassFunction to_class_function() const;
    bool is_class_function() const;
    const Scalar& operator[](Element g) const { return values[g]; }
};

// c_pi = (1/d_pi) sum_C |C| f(C) chi_pi(C); the Fourier transform of a class
// function at pi is c_pi times the identity matrix.
std::vector<Scalar> fourier_class_scalars(const ClassFunction& f, const CharacterTable& table);

// Inverse transform: f(C) = (1/|G|) sum_pi d_pi c_pi chi_pi(C).
ClassFunction class_function_from_scalars(const std::vector<Scalar>& scalars, const CharacterTable& table);

// Unitary matrices pi(g) for a chosen set of irreducible representations.
struct Irrep {
    std::string label;
    int degree = 1;
    std::vector<DenseMatrix<Complex>> matrices;  // indexed by element
};

struct IrrepMatrices {
    FiniteGroup group;
    std::vector<Irrep> irreps;
};

// Checks pi(e) = I, homomorphism and unitarity within 1e-8, and that the
// degrees square-sum to |G|. Empty string on success.
std::string check_irrep_matrices(const IrrepMatrices& reps);
IrrepMatrices irreps_from_abelian_table(const CharacterTable& table);
// Trivial, sign and standard (n-1)-dimensional representations of S_n,
// which exhaust the irreducibles exactly when n <= 3 (throws otherwise).
IrrepMatrices symmetric_basic_irreps(const FiniteGroup& group);
IrrepMatrices read_irrep_matrices(std::istream& in, const FiniteGroup& group);
void write_irrep_matrices(std::ostream& out, const IrrepMatrices& reps);

struct PositivityResult {
    bool positive = false;
    std::optional<std::size_t> irrep;  // offending irrep on failure
    Scalar witness;                    // offending scalar or smallest eigenvalue
};

inline constexpr double kPositivityTolerance = 1e-9;

PositivityResult is_positive_type(const ClassFunction& f, const CharacterTable& table);
// Abelian groups and class functions only; otherwise throws NeedsIrreps.
PositivityResult is_positive_type(const GroupFunction& f, const CharacterTable& table);
PositivityResult is_positive_type(const GroupFunction& f, const IrrepMatrices& reps);

GroupFunction convolve(const GroupFunction& f, const GroupFunction& g);
GroupFunction involute(const GroupFunction& f);
// sum_gamma (g * g^*)(gamma) f(gamma); nonnegative for every g iff f is of
// positive type.
Scalar positive_type_probe(const GroupFunction& f, const GroupFunction& g);

}  // namespace ctheta
