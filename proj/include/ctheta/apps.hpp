#pragma once

#include "ctheta/characters.hpp"
#include "ctheta/graphs.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ctheta {

// Permutations with fewer than k fixed points, as a union of S_n classes.
ConnectionSet efp_connection(const FiniteGroup& symmetric_group, int k);

// #{ s in S_n : s fixes at least m of the points 1..s_marked }, by
// inclusion-exclusion over the fixed subset.
std::uint64_t efp_fixing_count(int n, int marked, int at_least);

struct EfpMaximum {
    std::uint64_t value = 0;
    std::vector<int> maximizing_i;  // every i attaining the maximum
};

// max over 0 <= i <= (n-k)/2 of efp_fixing_count(n, k + 2i, k + i).
EfpMaximum efp_conjectured_max_detail(int n, int k);
std::uint64_t efp_conjectured_max(int n, int k);

struct EfpCell {
    int n = 0;
    int k = 0;
    bool computed = false;      // false marks a gap (budget or error)
    std::optional<Scalar> theta;
    std::uint64_t conjectured_max = 0;
    std::vector<int> maximizing_i;
    bool checkmark = false;     // exact theta equal to conjectured_max
    std::size_t lp_rows = 0;
    std::size_t lp_cols = 0;
    double runtime_ms = 0.0;
    std::string error;
};

struct EfpTableOptions {
    int n_max = 8;
    bool exact = true;
    int jobs = 1;
    std::optional<std::chrono::duration<double>> budget;
    std::function<void(const EfpCell&)> on_cell;  // called once per finished cell
};

// Cells for 1 <= k <= n <= n_max, ordered by n then k.
std::vector<EfpCell> efp_table(const EfpTableOptions& options);

// CSV: n,k,theta,conjectured_max,checkmark,lp_rows,lp_cols,runtime_ms
void write_efp_csv(std::ostream& out, const std::vector<EfpCell>& cells);
// Grid with k down and n across; a check mark where theta meets the
// conjectured maximum, '?' for gaps.
void write_efp_grid(std::ostream& out, const std::vector<EfpCell>& cells);

// { A in GL(n, q) : rank(A - I) > n - k }. Verifies inverse and conjugation
// closure.
ConnectionSet gl_connection(const FiniteGroup& general_linear, int k);

// prod_{i=k}^{n-1} (q^n - q^i); 1 when k = n.
std::uint64_t gl_lower_bound(int q, int n, int k);

// Matrices fixing the first k standard basis vectors, a set of size
// gl_lower_bound(q, n, k) that is independent in Cay(GL, X_{q,n,k}).
std::vector<Element> gl_witness_set(const FiniteGroup& general_linear, int k);

struct GlCell {
    int q = 0;
    int n = 0;
    int k = 0;
    std::uint64_t alpha_lower = 0;
    std::optional<std::size_t> alpha_exact;
    std::optional<Scalar> theta;  // float mode, from an imported character table
};

GlCell gl_cell(const FiniteGroup& general_linear, int k, const CharacterTable* table = nullptr,
               std::optional<std::chrono::duration<double>> alpha_budget = std::nullopt);

// Same table with every entry replaced by its floating-point value.
CharacterTable approximate_table(const CharacterTable& table);

}  // namespace ctheta
