#pragma once

// Concrete finite groups with canonical element indexing.
//
// Indexing conventions (stable across runs, so exported certificates and
// tables are reproducible byte for byte):
//
//   abelian-product  Z_{m1} x ... x Z_{mr}: mixed radix, first coordinate
//                    most significant, index = ((x1*m2 + x2)*m3 + x3)...
//   symmetric        S_n on letters {0..n-1}: rank of the one-line notation
//                    [p(0) ... p(n-1)] in lexicographic order (Lehmer rank).
//                    Composition is right-to-left: (a*b)(i) = a(b(i)).
//   general-linear   GL(n, F_q): matrices encoded row-major as base-q
//                    digits, first entry most significant. Index 0 is the
//                    identity; the remaining invertible matrices follow in
//                    increasing code order.
//   table            the indices of the supplied Cayley table; element 0
//                    must be the identity.

#include "ctheta/galois_field.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ctheta {

using Element = std::uint32_t;

enum class GroupKind { AbelianProduct, Symmetric, GeneralLinear, Table };

std::string to_string(GroupKind kind);

struct Partition {
    std::vector<int> parts;  // weakly decreasing, all >= 1

    int n() const;
    int multiplicity(int part) const;
    // "(2,1,1)"; the empty partition prints as "()".
    std::string label() const;
    // z_lambda = prod_i i^{m_i} m_i!
    std::uint64_t centralizer_order() const;

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;
};

// All partitions of n in increasing lexicographic order of their parts,
// so (1,...,1) comes first and (n) last.
std::vector<Partition> partitions_of(int n);

// Validates and canonicalizes (sorts descending); throws InvalidArgument on
// non-positive parts.
Partition make_partition(std::vector<int> parts);

struct ConjugacyClass {
    Element representative = 0;  // smallest member
    std::size_t size = 0;
    std::vector<Element> members;  // sorted
    std::string label;
    std::size_t inverse_class = 0;
    std::optional<Partition> cycle_type;  // symmetric groups only
};

namespace detail {
class GroupModel;
}

class FiniteGroup {
public:
    std::size_t order() const;
    Element identity() const { return 0; }
    Element multiply(Element a, Element b) const;
    Element invert(Element g) const;
    std::string element_label(Element g) const;
    GroupKind kind() const;

    const std::vector<ConjugacyClass>& classes() const;
    std::size_t class_of(Element g) const;

    // Abelian products.
    const std::vector<int>& moduli() const;
    std::vector<int> coordinates(Element g) const;

    // Symmetric groups.
    int degree() const;
    std::vector<int> permutation(Element g) const;
    Element from_permutation(std::span<const int> one_line) const;

    // General linear groups.
    int matrix_size() const;
    const GaloisField& field() const;
    std::vector<int> matrix(Element g) const;  // row-major field elements
    Element from_matrix(std::span<const int> entries) const;

    // Identity of the underlying model; copies share it.
    bool same_group(const FiniteGroup& other) const { return model_ == other.model_; }

    explicit FiniteGroup(std::shared_ptr<const detail::GroupModel> model) : model_(std::move(model)) {}

private:
    std::shared_ptr<const detail::GroupModel> model_;
};

FiniteGroup make_abelian_product(std::span<const int> moduli);
FiniteGroup make_symmetric(int n, int max_n = 10);
FiniteGroup make_general_linear(int q, int n, std::size_t max_order = 10000);
// table[a][b] = a*b. Throws NotAGroup naming the failing axiom and a witness.
FiniteGroup make_from_table(const std::vector<std::vector<Element>>& table);

// The classes as computed for the group (same as group.classes()).
const std::vector<ConjugacyClass>& conjugacy_classes(const FiniteGroup& group);

// Cayley-table text format: first line the order, then one line per row.
void write_cayley_table(std::ostream& out, const FiniteGroup& group);
FiniteGroup read_cayley_table(std::istream& in);

// Exhaustive axiom check (identity, inverses, associativity); returns an
// empty string on success, else a description of the first violation.
std::string check_group_axioms(const FiniteGroup& group);

class GroupAction {
public:
    // table[g * point_count + p] = g . p; validated as a left action.
    static GroupAction from_table(FiniteGroup group, std::size_t point_count, std::vector<std::uint32_t> table);
    // Group = closure of the generating permutations, built as a table group
    // (identity first, then breadth-first discovery order).
    static GroupAction from_generators(std::size_t point_count,
                                       const std::vector<std::vector<std::uint32_t>>& generators,
                                       std::size_t max_order = 5000);

    const FiniteGroup& group() const { return group_; }
    std::size_t point_count() const { return point_count_; }
    std::uint32_t act(Element g, std::uint32_t point) const { return table_[g * point_count_ + point]; }

private:
    GroupAction(FiniteGroup group, std::size_t points, std::vector<std::uint32_t> table)
        : group_(std::move(group)), point_count_(points), table_(std::move(table)) {}

    FiniteGroup group_;
    std::size_t point_count_;
    std::vector<std::uint32_t> table_;
};

// Action file: "generators <points> <count>" followed by count lines of
// images, or "table <order> <points>" followed by order lines (needs group).
GroupAction read_action(std::istream& in, const std::optional<FiniteGroup>& group);

}  // namespace ctheta
