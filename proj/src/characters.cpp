#include "ctheta/characters.hpp"

#include "ctheta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

namespace ctheta {

namespace {

constexpr double kTableTolerance = 1e-8;

Scalar from_u64(std::uint64_t v) { return Scalar(Rational(mpz_class(std::to_string(v)))); }

bool all_exact(const DenseMatrix<Scalar>& m) {
    return std::all_of(m.data().begin(), m.data().end(), [](const Scalar& s) { return s.is_exact(); });
}

bool table_close(const Scalar& a, const Scalar& b, double tol) { return approx_equal(a, b, tol); }

}  // namespace

// ---------------------------------------------------------------------------
// CharacterTable

std::string check_character_table(const FiniteGroup& group, const std::vector<std::uint64_t>& degrees,
                                  const DenseMatrix<Scalar>& entries) {
    const auto& classes = group.classes();
    const std::size_t r = entries.rows();
    const std::size_t k = entries.cols();
    if (r != degrees.size()) return "shape: " + std::to_string(degrees.size()) + " degrees for " + std::to_string(r) + " rows";
    if (k != classes.size()) return "shape: " + std::to_string(k) + " columns for " + std::to_string(classes.size()) + " classes";
    if (r != k) return "shape: " + std::to_string(r) + " irreps but " + std::to_string(k) + " classes";

    const bool exact = all_exact(entries);
    if (!exact && std::any_of(entries.data().begin(), entries.data().end(), [](const Scalar& s) { return s.is_exact(); })) {
        return "mixed exact and approximate entries";
    }
    const double tol = kTableTolerance * static_cast<double>(group.order());
    const Scalar order = from_u64(group.order());

    mpz_class degree_sum = 0;
    for (auto d : degrees) {
        if (d == 0) return "degree: zero degree";
        const mpz_class dz(std::to_string(d));
        degree_sum += dz * dz;
    }
    if (degree_sum != mpz_class(std::to_string(group.order()))) {
        return "degree sum: sum of squared degrees " + degree_sum.get_str() + " != group order";
    }
    for (std::size_t pi = 0; pi < r; ++pi) {
        if (!table_close(entries(pi, 0), from_u64(degrees[pi]), kTableTolerance)) {
            return "identity column: entry of irrep " + std::to_string(pi) + " differs from its degree";
        }
    }
    bool has_trivial = false;
    for (std::size_t pi = 0; pi < r && !has_trivial; ++pi) {
        bool ones = true;
        for (std::size_t c = 0; c < k && ones; ++c) ones = table_close(entries(pi, c), Scalar(1), kTableTolerance);
        has_trivial = ones;
    }
    if (!has_trivial) return "trivial character: no all-ones row";

    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a; b < r; ++b) {
            Scalar sum;
            for (std::size_t c = 0; c < k; ++c) {
                sum += from_u64(classes[c].size) * entries(a, c) * entries(b, c).conj();
            }
            const Scalar expected = a == b ? order : Scalar(0);
            if (!table_close(sum, expected, tol)) {
                return "row orthogonality: irreps " + std::to_string(a) + " and " + std::to_string(b);
            }
        }
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t c2 = c; c2 < k; ++c2) {
            Scalar sum;
            for (std::size_t pi = 0; pi < r; ++pi) sum += entries(pi, c) * entries(pi, c2).conj();
            const Scalar expected = c == c2 ? order / from_u64(classes[c].size) : Scalar(0);
            if (!table_close(sum, expected, tol)) {
                return "column orthogonality: classes " + std::to_string(c) + " and " + std::to_string(c2);
            }
        }
    return {};
}

CharacterTable::CharacterTable(FiniteGroup group, std::vector<std::string> irrep_labels,
                               std::vector<std::uint64_t> degrees, DenseMatrix<Scalar> entries)
    : group_(std::move(group)),
      irrep_labels_(std::move(irrep_labels)),
      degrees_(std::move(degrees)),
      entries_(std::move(entries)) {
    if (irrep_labels_.size() != degrees_.size()) throw CorruptTable("shape: label count differs from degree count");
    const std::string failure = check_character_table(group_, degrees_, entries_);
    if (!failure.empty()) throw CorruptTable(failure);
    exact_ = all_exact(entries_);
    for (std::size_t pi = 0; pi < degrees_.size(); ++pi) {
        bool ones = true;
        for (std::size_t c = 0; c < entries_.cols() && ones; ++c) {
            ones = table_close(entries_(pi, c), Scalar(1), kTableTolerance);
        }
        if (ones) {
            trivial_index_ = pi;
            break;
        }
    }
}

std::size_t CharacterTable::irrep_index(const std::string& label) const {
    const auto it = std::find(irrep_labels_.begin(), irrep_labels_.end(), label);
    if (it == irrep_labels_.end()) throw InvalidArgument("no irrep labelled '" + label + "'");
    return static_cast<std::size_t>(it - irrep_labels_.begin());
}

bool operator==(const CharacterTable& a, const CharacterTable& b) {
    return a.group_.same_group(b.group_) && a.irrep_labels_ == b.irrep_labels_ && a.degrees_ == b.degrees_ &&
           a.entries_ == b.entries_;
}

std::string check_structure_constants(const CharacterTable& table) {
    const FiniteGroup& g = table.group();
    const auto& classes = g.classes();
    const std::size_t k = classes.size();
    const double tol = 1e-6;
    for (std::size_t target = 0; target < k; ++target) {
        const Element z = classes[target].representative;
        std::vector<std::uint64_t> counts(k * k, 0);
        for (Element x = 0; x < g.order(); ++x) {
            const Element y = g.multiply(g.invert(x), z);
            ++counts[g.class_of(x) * k + g.class_of(y)];
        }
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                Scalar sum;
                for (std::size_t pi = 0; pi < table.irrep_count(); ++pi) {
                    sum += table.entry(pi, i) * table.entry(pi, j) * table.entry(pi, target).conj() /
                           from_u64(table.degree(pi));
                }
                const Scalar predicted = sum * from_u64(classes[i].size) * from_u64(classes[j].size) / from_u64(g.order());
                if (!table_close(predicted, from_u64(counts[i * k + j]), tol)) {
                    return "structure constants: classes (" + classes[i].label + ") x (" + classes[j].label + ") -> (" +
                           classes[target].label + ") predicted " + predicted.to_string() + ", counted " +
                           std::to_string(counts[i * k + j]);
                }
            }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Abelian groups

CharacterTable abelian_character_table(const FiniteGroup& group) {
    if (group.kind() != GroupKind::AbelianProduct) throw InvalidArgument("abelian_character_table needs an abelian-product group");
    const auto& moduli = group.moduli();
    const bool exact = std::all_of(moduli.begin(), moduli.end(), [](int m) { return m == 2; });
    long long lcm = 1;
    for (int m : moduli) lcm = std::lcm(lcm, static_cast<long long>(m));

    const std::size_t n = group.order();
    DenseMatrix<Scalar> entries(n, n);
    std::vector<std::string> labels(n);
    for (Element j = 0; j < n; ++j) {
        const auto jc = group.coordinates(j);
        labels[j] = "chi" + group.element_label(j);
        if (jc.size() == 1) labels[j] = "chi" + std::to_string(jc[0]);
        for (Element x = 0; x < n; ++x) {
            const auto xc = group.coordinates(x);
            long long phase = 0;  // in units of 1/lcm of a full turn
            for (std::size_t t = 0; t < moduli.size(); ++t) {
                phase = (phase + static_cast<long long>(jc[t]) * xc[t] * (lcm / moduli[t])) % lcm;
            }
            Scalar value;
            if (exact) {
                value = Scalar(phase == 0 ? 1 : -1);
            } else if ((4 * phase) % lcm == 0) {
                static const Complex quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
                value = Scalar(quarter[(4 * phase) / lcm]);
            } else {
                const double angle = 2.0 * M_PI * static_cast<double>(phase) / static_cast<double>(lcm);
                value = Scalar(Complex(std::cos(angle), std::sin(angle)));
            }
            entries(j, x) = value;
        }
    }
    return CharacterTable(group, std::move(labels), std::vector<std::uint64_t>(n, 1), std::move(entries));
}

// ---------------------------------------------------------------------------
// Symmetric groups

namespace {

using Beta = std::vector<int>;

class MurnaghanNakayama {
public:
    long long value(const Partition& lambda, const Partition& mu) {
        if (lambda.n() != mu.n()) throw InvalidArgument("partitions of different integers");
        return recurse(lambda.parts, mu.parts, 0);
    }

private:
    // Removing a rim hook of length k is the move b -> b-k on the beta-set;
    // its leg length is the number of beta-numbers jumped over.
    long long recurse(const std::vector<int>& lambda, const std::vector<int>& mu, std::size_t idx) {
        if (idx == mu.size()) return lambda.empty() ? 1 : 0;
        auto key = std::make_pair(lambda, std::vector<int>(mu.begin() + static_cast<std::ptrdiff_t>(idx), mu.end()));
        if (const auto it = memo_.find(key); it != memo_.end()) return it->second;

        const int len = static_cast<int>(lambda.size());
        Beta beta(len);
        for (int i = 0; i < len; ++i) beta[i] = lambda[i] + (len - 1 - i);
        const std::set<int> members(beta.begin(), beta.end());
        const int k = mu[idx];
        long long total = 0;
        for (int i = 0; i < len; ++i) {
            const int b = beta[i];
            const int target = b - k;
            if (target < 0 || members.count(target) != 0) continue;
            int jumped = 0;
            for (int c : beta) jumped += (c > target && c < b) ? 1 : 0;
            Beta next = beta;
            next[i] = target;
            std::sort(next.begin(), next.end(), std::greater<>());
            std::vector<int> shape;
            for (int t = 0; t < len; ++t) {
                const int part = next[t] - (len - 1 - t);
                if (part > 0) shape.push_back(part);
            }
            const long long sub = recurse(shape, mu, idx + 1);
            total += (jumped % 2 == 0) ? sub : -sub;
        }
        memo_.emplace(std::move(key), total);
        return total;
    }

    std::map<std::pair<std::vector<int>, std::vector<int>>, long long> memo_;  // (shape, remaining cycle lengths)
};

}  // namespace

long long murnaghan_nakayama(const Partition& lambda, const Partition& mu) {
    MurnaghanNakayama mn;
    return mn.value(lambda, mu);
}

std::uint64_t hook_length_degree(const Partition& lambda) {
    const int n = lambda.n();
    std::vector<int> conjugate(lambda.parts.empty() ? 0 : lambda.parts.front(), 0);
    for (int row : lambda.parts)
        for (int c = 0; c < row; ++c) ++conjugate[c];
    mpz_class numerator = 1, hooks = 1;
    for (int i = 2; i <= n; ++i) numerator *= i;
    for (std::size_t r = 0; r < lambda.parts.size(); ++r)
        for (int c = 0; c < lambda.parts[r]; ++c) {
            hooks *= (lambda.parts[r] - c - 1) + (conjugate[c] - static_cast<int>(r) - 1) + 1;
        }
    const mpz_class d = numerator / hooks;
    return std::stoull(d.get_str());
}

CharacterTable symmetric_character_table(const FiniteGroup& group) {
    if (group.kind() != GroupKind::Symmetric) throw InvalidArgument("symmetric_character_table needs a symmetric group");
    const int n = group.degree();
    auto irreps = partitions_of(n);
    std::reverse(irreps.begin(), irreps.end());  // (n) first: the trivial character
    const auto& classes = group.classes();

    MurnaghanNakayama mn;
    DenseMatrix<Scalar> entries(irreps.size(), classes.size());
    std::vector<std::uint64_t> degrees;
    std::vector<std::string> labels;
    for (std::size_t pi = 0; pi < irreps.size(); ++pi) {
        for (std::size_t c = 0; c < classes.size(); ++c) {
            entries(pi, c) = Scalar(Rational(static_cast<long>(mn.value(irreps[pi], *classes[c].cycle_type))));
        }
        const std::uint64_t d = hook_length_degree(irreps[pi]);
        if (entries(pi, 0) != Scalar(Rational(mpz_class(std::to_string(d))))) {
            throw InternalError("Murnaghan-Nakayama degree disagrees with the hook length formula for " +
                                irreps[pi].label());
        }
        degrees.push_back(d);
        labels.push_back(irreps[pi].label());
    }
    return CharacterTable(group, std::move(labels), std::move(degrees), std::move(entries));
}

CharacterTable symmetric_character_table(int n) { return symmetric_character_table(make_symmetric(n)); }

// ---------------------------------------------------------------------------
// Class and group functions

ClassFunction ClassFunction::constant(const FiniteGroup& group, const Scalar& value) {
    return ClassFunction{group, std::vector<Scalar>(group.classes().size(), value)};
}

ClassFunction ClassFunction::delta_identity(const FiniteGroup& group) {
    ClassFunction f = constant(group, Scalar(0));
    f.values[group.class_of(group.identity())] = Scalar(1);
    return f;
}

GroupFunction GroupFunction::from_class_function(const ClassFunction& f) {
    GroupFunction out{f.group, std::vector<Scalar>(f.group.order())};
    for (Element g = 0; g < f.group.order(); ++g) out.values[g] = f.values[f.group.class_of(g)];
    return out;
}

bool GroupFunction::is_class_function() const {
    for (const auto& cls : group.classes()) {
        for (Element g : cls.members) {
            if (!(values[g] == values[cls.representative])) return false;
        }
    }
    return true;
}

ClassFunction GroupFunction::to_class_function() const {
    if (!is_class_function()) throw InvalidArgument("function is not constant on conjugacy classes");
    ClassFunction f{group, {}};
    for (const auto& cls : group.classes()) f.values.push_back(values[cls.representative]);
    return f;
}

std::vector<Scalar> fourier_class_scalars(const ClassFunction& f, const CharacterTable& table) {
    if (!f.group.same_group(table.group())) throw InvalidArgument("class function and table belong to different groups");
    if (f.values.size() != table.class_count()) throw InvalidArgument("class function has wrong length");
    const auto& classes = table.group().classes();
    std::vector<Scalar> out;
    out.reserve(table.irrep_count());
    for (std::size_t pi = 0; pi < table.irrep_count(); ++pi) {
        Scalar sum;
        for (std::size_t c = 0; c < classes.size(); ++c) {
            if (f.values[c].is_zero()) continue;
            sum += from_u64(classes[c].size) * f.values[c] * table.entry(pi, c);
        }
        out.push_back(sum / from_u64(table.degree(pi)));
    }
    return out;
}

ClassFunction class_function_from_scalars(const std::vector<Scalar>& scalars, const CharacterTable& table) {
    if (scalars.size() != table.irrep_count()) throw InvalidArgument("one scalar per irrep required");
    ClassFunction f = ClassFunction::constant(table.group(), Scalar(0));
    const Scalar order = from_u64(table.group().order());
    for (std::size_t c = 0; c < table.class_count(); ++c) {
        Scalar sum;
        for (std::size_t pi = 0; pi < table.irrep_count(); ++pi) {
            if (scalars[pi].is_zero()) continue;
            sum += from_u64(table.degree(pi)) * scalars[pi] * table.entry(pi, c);
        }
        f.values[c] = sum / order;
    }
    return f;
}

GroupFunction convolve(const GroupFunction& f, const GroupFunction& g) {
    if (!f.group.same_group(g.group)) throw InvalidArgument("convolution of functions on different groups");
    const FiniteGroup& grp = f.group;
    if (grp.order() > 5000) throw SizeLimit("direct convolution limited to |G| <= 5000");
    GroupFunction out{grp, std::vector<Scalar>(grp.order())};
    // (f*g)(b d) accumulates f(b) g(d).
    for (Element b = 0; b < grp.order(); ++b) {
        if (f.values[b].is_zero()) continue;
        for (Element d = 0; d < grp.order(); ++d) {
            if (g.values[d].is_zero()) continue;
            out.values[grp.multiply(b, d)] += f.values[b] * g.values[d];
        }
    }
    return out;
}

GroupFunction involute(const GroupFunction& f) {
    GroupFunction out{f.group, std::vector<Scalar>(f.group.order())};
    for (Element g = 0; g < f.group.order(); ++g) out.values[g] = f.values[f.group.invert(g)].conj();
    return out;
}

Scalar positive_type_probe(const GroupFunction& f, const GroupFunction& g) {
    const GroupFunction gg = convolve(g, involute(g));
    if (!f.group.same_group(g.group)) throw InvalidArgument("probe on a different group");
    Scalar sum;
    for (Element x = 0; x < f.group.order(); ++x) sum += gg.values[x] * f.values[x];
    return sum;
}

// ---------------------------------------------------------------------------
// Positive type

PositivityResult is_positive_type(const ClassFunction& f, const CharacterTable& table) {
    const auto scalars = fourier_class_scalars(f, table);
    for (std::size_t pi = 0; pi < scalars.size(); ++pi) {
        if (!scalars[pi].is_nonnegative_real(kPositivityTolerance)) return {false, pi, scalars[pi]};
    }
    return {true, std::nullopt, Scalar()};
}

PositivityResult is_positive_type(const GroupFunction& f, const CharacterTable& table) {
    if (!f.group.same_group(table.group())) throw InvalidArgument("function and table belong to different groups");
    if (!f.is_class_function()) {
        throw NeedsIrreps("function is not a class function on a non-abelian group; irrep matrices are required");
    }
    return is_positive_type(f.to_class_function(), table);
}

}  // namespace ctheta
