#include "ctheta/apps.hpp"

#include "ctheta/errors.hpp"
#include "ctheta/theta.hpp"

#include <gmpxx.h>

#include <atomic>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <thread>

namespace ctheta {

namespace {

mpz_class binomial(int n, int r) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
    return out;
}

mpz_class factorial(int n) {
    mpz_class out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

// Permutations of r letters fixing none of u marked letters.
mpz_class derangements_of_marked(int r, int u) {
    mpz_class total = 0;
    for (int j = 0; j <= u; ++j) {
        const mpz_class term = binomial(u, j) * factorial(r - j);
        total += (j % 2 == 0) ? term : mpz_class(-term);
    }
    return total;
}

std::uint64_t to_u64(const mpz_class& v) {
    if (sgn(v) < 0 || !v.fits_ulong_p()) throw InternalError("count does not fit in 64 bits");
    return v.get_ui();
}

void check_efp_range(int n, int k) {
    if (n < 1 || n > 20) throw InvalidArgument("n must lie in [1, 20]");
    if (k < 1 || k > n) throw InvalidArgument("k must satisfy 1 <= k <= n (got k = " + std::to_string(k) + ")");
}

}  // namespace

ConnectionSet efp_connection(const FiniteGroup& symmetric_group, int k) {
    if (symmetric_group.kind() != GroupKind::Symmetric) throw InvalidArgument("efp_connection needs a symmetric group");
    check_efp_range(symmetric_group.degree(), k);
    std::vector<std::size_t> classes;
    const auto& all = symmetric_group.classes();
    for (std::size_t c = 0; c < all.size(); ++c)
        if (all[c].cycle_type->multiplicity(1) < k) classes.push_back(c);
    return ConnectionSet::from_classes(symmetric_group, std::move(classes));
}

std::uint64_t efp_fixing_count(int n, int marked, int at_least) {
    if (marked < 0 || marked > n || at_least < 0) throw InvalidArgument("need 0 <= marked <= n and at_least >= 0");
    mpz_class total = 0;
    for (int t = at_least; t <= marked; ++t) total += binomial(marked, t) * derangements_of_marked(n - t, marked - t);
    return to_u64(total);
}

EfpMaximum efp_conjectured_max_detail(int n, int k) {
    check_efp_range(n, k);
    EfpMaximum best;
    for (int i = 0; 2 * i <= n - k; ++i) {
        const std::uint64_t v = efp_fixing_count(n, k + 2 * i, k + i);
        if (v > best.value) {
            best.value = v;
            best.maximizing_i.clear();
        }
        if (v == best.value) best.maximizing_i.push_back(i);
    }
    return best;
}

std::uint64_t efp_conjectured_max(int n, int k) { return efp_conjectured_max_detail(n, k).value; }

CharacterTable approximate_table(const CharacterTable& table) {
    DenseMatrix<Scalar> entries(table.irrep_count(), table.class_count());
    for (std::size_t pi = 0; pi < table.irrep_count(); ++pi)
        for (std::size_t c = 0; c < table.class_count(); ++c) entries(pi, c) = Scalar(table.entry(pi, c).to_complex());
    return CharacterTable(table.group(), table.irrep_labels(), table.degrees(), std::move(entries));
}

std::vector<EfpCell> efp_table(const EfpTableOptions& options) {
    if (options.n_max < 1 || options.n_max > 10) throw InvalidArgument("n_max must lie in [1, 10]");
    const auto start = std::chrono::steady_clock::now();
    const auto out_of_time = [&] {
        return options.budget && std::chrono::steady_clock::now() - start > *options.budget;
    };

    std::vector<FiniteGroup> groups;
    std::vector<CharacterTable> tables;
    for (int n = 1; n <= options.n_max; ++n) {
        groups.push_back(make_symmetric(n));
        CharacterTable table = symmetric_character_table(groups.back());
        tables.push_back(options.exact ? std::move(table) : approximate_table(table));
    }

    std::vector<EfpCell> cells;
    for (int n = 1; n <= options.n_max; ++n)
        for (int k = 1; k <= n; ++k) {
            EfpCell cell;
            cell.n = n;
            cell.k = k;
            cells.push_back(cell);
        }

    std::atomic<std::size_t> next{0};
    std::mutex report;
    auto worker = [&] {
        while (true) {
            const std::size_t index = next.fetch_add(1);
            if (index >= cells.size()) return;
            EfpCell& cell = cells[index];
            if (out_of_time()) {
                cell.error = "budget exhausted";
            } else {
                const auto t0 = std::chrono::steady_clock::now();
                try {
                    const auto& group = groups[static_cast<std::size_t>(cell.n - 1)];
                    const auto& table = tables[static_cast<std::size_t>(cell.n - 1)];
                    const CayleyGraphSpec spec(efp_connection(group, cell.k));
                    const ThetaCertificate cert = solve_theta(spec, table);
                    const EfpMaximum max = efp_conjectured_max_detail(cell.n, cell.k);
                    cell.theta = cert.objective;
                    cell.conjectured_max = max.value;
                    cell.maximizing_i = max.maximizing_i;
                    cell.checkmark = cert.exact &&
                                     cert.objective.rational() == Rational(static_cast<unsigned long>(max.value));
                    cell.lp_rows = cert.lp_rows;
                    cell.lp_cols = cert.lp_cols;
                    cell.computed = true;
                } catch (const Error& e) {
                    cell.error = e.what();
                }
                cell.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            }
            if (options.on_cell) {
                std::lock_guard lock(report);
                options.on_cell(cell);
            }
        }
    };
    const int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    return cells;
}

void write_efp_csv(std::ostream& out, const std::vector<EfpCell>& cells) {
    out << "n,k,theta,conjectured_max,checkmark,lp_rows,lp_cols,runtime_ms\n";
    for (const auto& cell : cells) {
        char runtime[32];
        std::snprintf(runtime, sizeof runtime, "%.3f", cell.runtime_ms);
        out << cell.n << ',' << cell.k << ',';
        if (cell.computed) {
            out << (cell.theta->is_exact() ? cell.theta->to_string() : Scalar::approx(cell.theta->real()).to_string());
            out << ',' << cell.conjectured_max << ',' << (cell.checkmark ? 1 : 0) << ',' << cell.lp_rows << ','
                << cell.lp_cols << ',' << runtime << '\n';
        } else {
            out << ",,,,," << runtime << '\n';
        }
    }
}

void write_efp_grid(std::ostream& out, const std::vector<EfpCell>& cells) {
    int n_max = 0;
    for (const auto& cell : cells) n_max = std::max(n_max, cell.n);
    auto find = [&](int n, int k) -> const EfpCell* {
        for (const auto& cell : cells)
            if (cell.n == n && cell.k == k) return &cell;
        return nullptr;
    };
    out << "k\\n";
    for (int n = 1; n <= n_max; ++n) out << (n < 10 ? "  " : " ") << n;
    out << '\n';
    for (int k = 1; k <= n_max; ++k) {
        out << (k < 10 ? "  " : " ") << k;
        for (int n = 1; n <= n_max; ++n) {
            const EfpCell* cell = find(n, k);
            const char* mark = "  ";
            if (cell && !cell->computed) mark = " ?";
            if (cell && cell->checkmark) mark = " ✓";
            out << ' ' << mark;
        }
        out << '\n';
    }
}

ConnectionSet gl_connection(const FiniteGroup& general_linear, int k) {
    if (general_linear.kind() != GroupKind::GeneralLinear) throw InvalidArgument("gl_connection needs a general linear group");
    const int n = general_linear.matrix_size();
    if (k < 1 || k > n) throw InvalidArgument("k must satisfy 1 <= k <= n (got k = " + std::to_string(k) + ")");
    const GaloisField& field = general_linear.field();
    std::vector<Element> elements;
    for (Element g = 0; g < general_linear.order(); ++g) {
        auto m = general_linear.matrix(g);
        for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i * n + i)] = field.sub(m[static_cast<std::size_t>(i * n + i)], 1);
        if (matrix_rank(field, std::move(m), n, n) > n - k) elements.push_back(g);
    }
    ConnectionSet x = ConnectionSet::from_elements(general_linear, std::move(elements));
    if (!x.conjugation_closed()) throw InternalError("rank(A - I) condition produced a set that is not conjugation-closed");
    return x;
}

std::uint64_t gl_lower_bound(int q, int n, int k) {
    if (q < 2 || n < 1 || k < 1 || k > n) throw InvalidArgument("need q >= 2 and 1 <= k <= n");
    mpz_class product = 1;
    mpz_class qn;
    mpz_ui_pow_ui(qn.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(n));
    for (int i = k; i < n; ++i) {
        mpz_class qi;
        mpz_ui_pow_ui(qi.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(i));
        product *= qn - qi;
    }
    return to_u64(product);
}

std::vector<Element> gl_witness_set(const FiniteGroup& general_linear, int k) {
    if (general_linear.kind() != GroupKind::GeneralLinear) throw InvalidArgument("gl_witness_set needs a general linear group");
    const int n = general_linear.matrix_size();
    if (k < 1 || k > n) throw InvalidArgument("k must satisfy 1 <= k <= n");
    std::vector<Element> out;
    for (Element g = 0; g < general_linear.order(); ++g) {
        const auto m = general_linear.matrix(g);
        bool fixes = true;
        for (int col = 0; col < k && fixes; ++col)
            for (int row = 0; row < n && fixes; ++row) fixes = m[static_cast<std::size_t>(row * n + col)] == (row == col ? 1 : 0);
        if (fixes) out.push_back(g);
    }
    return out;
}

GlCell gl_cell(const FiniteGroup& general_linear, int k, const CharacterTable* table,
               std::optional<std::chrono::duration<double>> alpha_budget) {
    GlCell cell;
    cell.q = general_linear.field().order();
    cell.n = general_linear.matrix_size();
    cell.k = k;
    cell.alpha_lower = gl_lower_bound(cell.q, cell.n, k);
    const ConnectionSet x = gl_connection(general_linear, k);
    const AlphaResult a = alpha(build_cayley(x), alpha_budget);
    if (a.exact) cell.alpha_exact = a.lower;
    if (table != nullptr) {
        const CharacterTable approx = table->exact() ? approximate_table(*table) : *table;
        cell.theta = solve_theta(CayleyGraphSpec(x), approx).objective;
    }
    return cell;
}

}  // namespace ctheta
