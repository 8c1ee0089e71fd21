#include "ctheta/groups.hpp"

#include "ctheta/errors.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace ctheta {

std::string to_string(GroupKind kind) {
    switch (kind) {
        case GroupKind::AbelianProduct: return "abelian-product";
        case GroupKind::Symmetric: return "symmetric";
        case GroupKind::GeneralLinear: return "general-linear";
        case GroupKind::Table: return "table";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Partitions

int Partition::n() const { return std::accumulate(parts.begin(), parts.end(), 0); }

int Partition::multiplicity(int part) const {
    return static_cast<int>(std::count(parts.begin(), parts.end(), part));
}

std::string Partition::label() const {
    std::string out = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(parts[i]);
    }
    return out + ")";
}

std::uint64_t Partition::centralizer_order() const {
    std::uint64_t z = 1;
    const int total = n();
    for (int i = 1; i <= total; ++i) {
        const int m = multiplicity(i);
        for (int k = 0; k < m; ++k) z *= static_cast<std::uint64_t>(i);
        for (int k = 2; k <= m; ++k) z *= static_cast<std::uint64_t>(k);
    }
    return z;
}

Partition make_partition(std::vector<int> parts) {
    for (int p : parts) {
        if (p < 1) throw InvalidArgument("partition parts must be positive");
    }
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Partition{std::move(parts)};
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& current, std::vector<Partition>& out) {
    if (remaining == 0) {
        out.push_back(Partition{current});
        return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        current.push_back(p);
        partitions_rec(remaining - p, p, current, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_of(int n) {
    if (n < 0) throw InvalidArgument("partitions of a negative integer");
    std::vector<Partition> out;
    std::vector<int> current;
    partitions_rec(n, n, current, out);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Models

namespace detail {

class GroupModel {
public:
    virtual ~GroupModel() = default;

    GroupKind kind = GroupKind::Table;
    std::size_t order = 0;
    std::vector<Element> inverse;
    std::vector<Element> table;  // Cayley table cache; empty when too large
    std::vector<ConjugacyClass> classes;
    std::vector<std::uint32_t> class_of;

    Element multiply(Element a, Element b) const {
        if (!table.empty()) return table[static_cast<std::size_t>(a) * order + b];
        return multiply_uncached(a, b);
    }
    virtual Element multiply_uncached(Element a, Element b) const = 0;
    virtual std::string label(Element g) const = 0;
};

}  // namespace detail

namespace {

constexpr std::size_t kTableCacheLimit = 2048;

using detail::GroupModel;

class AbelianModel final : public GroupModel {
public:
    std::vector<int> moduli;

    std::vector<int> coords(Element g) const {
        std::vector<int> x(moduli.size());
        for (std::size_t t = moduli.size(); t-- > 0;) {
            x[t] = static_cast<int>(g % moduli[t]);
            g /= moduli[t];
        }
        return x;
    }
    Element encode(const std::vector<int>& x) const {
        Element g = 0;
        for (std::size_t t = 0; t < moduli.size(); ++t) g = g * moduli[t] + x[t];
        return g;
    }
    Element multiply_uncached(Element a, Element b) const override {
        auto xa = coords(a);
        const auto xb = coords(b);
        for (std::size_t t = 0; t < moduli.size(); ++t) xa[t] = (xa[t] + xb[t]) % moduli[t];
        return encode(xa);
    }
    std::string label(Element g) const override {
        const auto x = coords(g);
        if (x.size() == 1) return std::to_string(x[0]);
        std::string out = "(";
        for (std::size_t t = 0; t < x.size(); ++t) {
            if (t > 0) out += ",";
            out += std::to_string(x[t]);
        }
        return out + ")";
    }
};

class SymmetricModel final : public GroupModel {
public:
    int n = 0;
    std::vector<std::uint64_t> factorial;

    std::vector<int> unrank(Element r) const {
        std::vector<int> pool(n);
        std::iota(pool.begin(), pool.end(), 0);
        std::vector<int> p(n);
        std::uint64_t rest = r;
        for (int i = 0; i < n; ++i) {
            const std::uint64_t f = factorial[n - 1 - i];
            const auto d = static_cast<std::size_t>(rest / f);
            rest %= f;
            p[i] = pool[d];
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(d));
        }
        return p;
    }
    Element rank(std::span<const int> p) const {
        std::uint64_t r = 0;
        for (int i = 0; i < n; ++i) {
            int smaller = 0;
            for (int j = i + 1; j < n; ++j) smaller += p[j] < p[i] ? 1 : 0;
            r += static_cast<std::uint64_t>(smaller) * factorial[n - 1 - i];
        }
        return static_cast<Element>(r);
    }
    Element multiply_uncached(Element a, Element b) const override {
        const auto pa = unrank(a);
        const auto pb = unrank(b);
        std::vector<int> c(n);
        for (int i = 0; i < n; ++i) c[i] = pa[pb[i]];
        return rank(c);
    }
    std::string label(Element g) const override {
        const auto p = unrank(g);
        std::vector<bool> seen(n, false);
        std::string out;
        for (int i = 0; i < n; ++i) {
            if (seen[i] || p[i] == i) continue;
            out += "(";
            int j = i;
            bool first = true;
            while (!seen[j]) {
                seen[j] = true;
                if (!first) out += " ";
                out += std::to_string(j + 1);
                first = false;
                j = p[j];
            }
            out += ")";
        }
        return out.empty() ? "()" : out;
    }
};

class GeneralLinearModel final : public GroupModel {
public:
    int n = 0;
    std::unique_ptr<GaloisField> field;
    std::vector<std::uint64_t> codes;
    std::unordered_map<std::uint64_t, Element> index;

    std::vector<int> decode(std::uint64_t code) const {
        const int q = field->order();
        std::vector<int> m(n * n);
        for (int k = n * n - 1; k >= 0; --k) {
            m[k] = static_cast<int>(code % q);
            code /= q;
        }
        return m;
    }
    std::uint64_t encode(std::span<const int> m) const {
        std::uint64_t code = 0;
        for (int v : m) code = code * field->order() + static_cast<std::uint64_t>(v);
        return code;
    }
    Element lookup(std::span<const int> m) const {
        const auto it = index.find(encode(m));
        if (it == index.end()) throw InvalidArgument("matrix is not in the group");
        return it->second;
    }
    Element multiply_uncached(Element a, Element b) const override {
        const auto ma = decode(codes[a]);
        const auto mb = decode(codes[b]);
        std::vector<int> c(n * n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                int s = 0;
                for (int k = 0; k < n; ++k) s = field->add(s, field->mul(ma[i * n + k], mb[k * n + j]));
                c[i * n + j] = s;
            }
        return lookup(c);
    }
    std::string label(Element g) const override {
        const auto m = decode(codes[g]);
        std::string out = "[";
        for (int i = 0; i < n; ++i) {
            out += i == 0 ? "[" : ",[";
            for (int j = 0; j < n; ++j) {
                if (j > 0) out += ",";
                out += field->label(m[i * n + j]);
            }
            out += "]";
        }
        return out + "]";
    }
};

class TableModel final : public GroupModel {
public:
    Element multiply_uncached(Element a, Element b) const override {
        return table[static_cast<std::size_t>(a) * order + b];
    }
    std::string label(Element g) const override { return std::to_string(g); }
};

void compute_inverses(GroupModel& m) {
    if (!m.inverse.empty()) return;
    m.inverse.assign(m.order, 0);
    std::vector<bool> done(m.order, false);
    for (Element g = 0; g < m.order; ++g) {
        if (done[g]) continue;
        for (Element h = 0; h < m.order; ++h) {
            if (m.multiply(g, h) == 0) {
                m.inverse[g] = h;
                m.inverse[h] = g;
                done[g] = done[h] = true;
                break;
            }
        }
    }
}

void cache_table(GroupModel& m) {
    if (!m.table.empty() || m.order > kTableCacheLimit) return;
    std::vector<Element> t(m.order * m.order);
    for (Element a = 0; a < m.order; ++a)
        for (Element b = 0; b < m.order; ++b) t[static_cast<std::size_t>(a) * m.order + b] = m.multiply_uncached(a, b);
    m.table = std::move(t);
}

void link_classes(GroupModel& m) {
    m.class_of.assign(m.order, 0);
    for (std::size_t c = 0; c < m.classes.size(); ++c)
        for (Element g : m.classes[c].members) m.class_of[g] = static_cast<std::uint32_t>(c);
    for (auto& cls : m.classes) cls.inverse_class = m.class_of[m.inverse[cls.representative]];
}

// Orbits under conjugation, ordered by smallest member.
void compute_generic_classes(GroupModel& m) {
    constexpr std::uint32_t unset = ~0u;
    std::vector<std::uint32_t> owner(m.order, unset);
    for (Element g = 0; g < m.order; ++g) {
        if (owner[g] != unset) continue;
        ConjugacyClass cls;
        cls.representative = g;
        const auto id = static_cast<std::uint32_t>(m.classes.size());
        for (Element h = 0; h < m.order; ++h) {
            const Element c = m.multiply(m.multiply(h, g), m.inverse[h]);
            if (owner[c] == unset) {
                owner[c] = id;
                cls.members.push_back(c);
            }
        }
        std::sort(cls.members.begin(), cls.members.end());
        cls.size = cls.members.size();
        cls.label = m.label(g);
        m.classes.push_back(std::move(cls));
    }
    link_classes(m);
}

std::shared_ptr<const GroupModel> finish(std::shared_ptr<GroupModel> m) {
    cache_table(*m);
    compute_inverses(*m);
    if (m->classes.empty()) compute_generic_classes(*m);
    return m;
}

template <class Model>
const Model& model_as(const std::shared_ptr<const GroupModel>& m, GroupKind kind, const char* what) {
    if (m->kind != kind) throw InvalidArgument(std::string(what) + " requires a " + to_string(kind) + " group");
    return static_cast<const Model&>(*m);
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteGroup

std::size_t FiniteGroup::order() const { return model_->order; }
Element FiniteGroup::multiply(Element a, Element b) const { return model_->multiply(a, b); }
Element FiniteGroup::invert(Element g) const { return model_->inverse[g]; }
std::string FiniteGroup::element_label(Element g) const { return model_->label(g); }
GroupKind FiniteGroup::kind() const { return model_->kind; }
const std::vector<ConjugacyClass>& FiniteGroup::classes() const { return model_->classes; }
std::size_t FiniteGroup::class_of(Element g) const { return model_->class_of[g]; }

const std::vector<int>& FiniteGroup::moduli() const {
    return model_as<AbelianModel>(model_, GroupKind::AbelianProduct, "moduli").moduli;
}
std::vector<int> FiniteGroup::coordinates(Element g) const {
    return model_as<AbelianModel>(model_, GroupKind::AbelianProduct, "coordinates").coords(g);
}
int FiniteGroup::degree() const { return model_as<SymmetricModel>(model_, GroupKind::Symmetric, "degree").n; }
std::vector<int> FiniteGroup::permutation(Element g) const {
    return model_as<SymmetricModel>(model_, GroupKind::Symmetric, "permutation").unrank(g);
}
Element FiniteGroup::from_permutation(std::span<const int> one_line) const {
    const auto& m = model_as<SymmetricModel>(model_, GroupKind::Symmetric, "from_permutation");
    std::vector<int> sorted(one_line.begin(), one_line.end());
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < m.n; ++i) {
        if (static_cast<int>(sorted.size()) != m.n || sorted[i] != i) {
            throw InvalidArgument("not a permutation of 0.." + std::to_string(m.n - 1));
        }
    }
    return m.rank(one_line);
}
int FiniteGroup::matrix_size() const {
    return model_as<GeneralLinearModel>(model_, GroupKind::GeneralLinear, "matrix_size").n;
}
const GaloisField& FiniteGroup::field() const {
    return *model_as<GeneralLinearModel>(model_, GroupKind::GeneralLinear, "field").field;
}
std::vector<int> FiniteGroup::matrix(Element g) const {
    const auto& m = model_as<GeneralLinearModel>(model_, GroupKind::GeneralLinear, "matrix");
    return m.decode(m.codes[g]);
}
Element FiniteGroup::from_matrix(std::span<const int> entries) const {
    const auto& m = model_as<GeneralLinearModel>(model_, GroupKind::GeneralLinear, "from_matrix");
    if (entries.size() != static_cast<std::size_t>(m.n * m.n)) throw InvalidArgument("wrong matrix size");
    return m.lookup(entries);
}

// ---------------------------------------------------------------------------
// Constructors

FiniteGroup make_abelian_product(std::span<const int> moduli) {
    if (moduli.empty()) throw InvalidArgument("abelian product needs at least one modulus");
    std::uint64_t order = 1;
    for (int m : moduli) {
        if (m < 2) throw InvalidArgument("modulus " + std::to_string(m) + " < 2");
        order *= static_cast<std::uint64_t>(m);
        if (order > 1'000'000) throw InvalidArgument("abelian product order exceeds 1000000");
    }
    auto model = std::make_shared<AbelianModel>();
    model->kind = GroupKind::AbelianProduct;
    model->moduli.assign(moduli.begin(), moduli.end());
    model->order = order;
    model->inverse.resize(order);
    for (Element g = 0; g < order; ++g) {
        auto x = model->coords(g);
        for (std::size_t t = 0; t < x.size(); ++t) x[t] = (model->moduli[t] - x[t]) % model->moduli[t];
        model->inverse[g] = model->encode(x);
    }
    for (Element g = 0; g < order; ++g) {
        ConjugacyClass cls;
        cls.representative = g;
        cls.size = 1;
        cls.members = {g};
        cls.label = model->label(g);
        model->classes.push_back(std::move(cls));
    }
    link_classes(*model);
    return FiniteGroup(finish(model));
}

FiniteGroup make_symmetric(int n, int max_n) {
    if (n < 1 || n > max_n) {
        throw InvalidArgument("symmetric group degree " + std::to_string(n) + " outside 1.." + std::to_string(max_n));
    }
    auto model = std::make_shared<SymmetricModel>();
    model->kind = GroupKind::Symmetric;
    model->n = n;
    model->factorial.assign(n + 1, 1);
    for (int i = 1; i <= n; ++i) model->factorial[i] = model->factorial[i - 1] * static_cast<std::uint64_t>(i);
    model->order = model->factorial[n];

    const auto parts = partitions_of(n);
    std::map<Partition, std::uint32_t> class_index;
    for (std::size_t c = 0; c < parts.size(); ++c) {
        class_index.emplace(parts[c], static_cast<std::uint32_t>(c));
        ConjugacyClass cls;
        cls.label = parts[c].label();
        cls.cycle_type = parts[c];
        model->classes.push_back(std::move(cls));
    }

    // Lexicographic enumeration visits ranks 0, 1, 2, ... in order.
    std::vector<int> p(n), inv(n), cycle;
    std::iota(p.begin(), p.end(), 0);
    std::vector<bool> seen(n);
    model->inverse.resize(model->order);
    Element r = 0;
    do {
        std::fill(seen.begin(), seen.end(), false);
        cycle.clear();
        for (int i = 0; i < n; ++i) {
            if (seen[i]) continue;
            int len = 0;
            for (int j = i; !seen[j]; j = p[j]) {
                seen[j] = true;
                ++len;
            }
            cycle.push_back(len);
        }
        std::sort(cycle.begin(), cycle.end(), std::greater<>());
        auto& cls = model->classes[class_index.at(Partition{cycle})];
        cls.members.push_back(r);
        for (int i = 0; i < n; ++i) inv[p[i]] = i;
        model->inverse[r] = model->rank(inv);
        ++r;
    } while (std::next_permutation(p.begin(), p.end()));

    for (auto& cls : model->classes) {
        cls.size = cls.members.size();
        cls.representative = cls.members.front();
    }
    link_classes(*model);
    return FiniteGroup(finish(model));
}

FiniteGroup make_general_linear(int q, int n, std::size_t max_order) {
    if (!is_supported_field_order(q)) {
        throw InvalidArgument("q = " + std::to_string(q) + " is not a supported prime power (2,3,4,5,7,8,9)");
    }
    if (n < 1) throw InvalidArgument("matrix size must be positive");
    std::uint64_t order = 1;
    std::uint64_t qn = 1;
    for (int i = 0; i < n; ++i) {
        qn *= static_cast<std::uint64_t>(q);
        if (qn > 1'000'000'000ULL) throw InvalidArgument("GL order bound exceeded");
    }
    std::uint64_t qi = 1;
    for (int i = 0; i < n; ++i) {
        order *= qn - qi;
        qi *= static_cast<std::uint64_t>(q);
        if (order > max_order) {
            throw InvalidArgument("GL(" + std::to_string(n) + "," + std::to_string(q) + ") exceeds order bound " +
                                  std::to_string(max_order));
        }
    }

    auto model = std::make_shared<GeneralLinearModel>();
    model->kind = GroupKind::GeneralLinear;
    model->n = n;
    model->field = std::make_unique<GaloisField>(q);
    std::vector<int> identity(n * n, 0);
    for (int i = 0; i < n; ++i) identity[i * n + i] = 1;
    const std::uint64_t id_code = model->encode(identity);
    model->codes.push_back(id_code);
    std::uint64_t total = 1;
    for (int k = 0; k < n * n; ++k) total *= static_cast<std::uint64_t>(q);
    for (std::uint64_t code = 0; code < total; ++code) {
        if (code == id_code) continue;
        if (matrix_rank(*model->field, model->decode(code), n, n) == n) model->codes.push_back(code);
    }
    model->order = model->codes.size();
    if (model->order != order) throw InternalError("GL enumeration disagrees with the order formula");
    for (std::size_t i = 0; i < model->codes.size(); ++i) model->index.emplace(model->codes[i], static_cast<Element>(i));
    return FiniteGroup(finish(model));
}

namespace {

// Left-nested products of gens reach every element (used for Light's test).
std::vector<Element> magma_generators(std::size_t order, const std::function<Element(Element, Element)>& mul) {
    std::vector<Element> gens;
    std::vector<bool> reached(order, false);
    std::size_t count = 0;
    for (Element g = 0; g < order && count < order; ++g) {
        if (reached[g]) continue;
        gens.push_back(g);
        std::deque<Element> frontier;
        for (Element s = 0; s < order; ++s)
            if (reached[s]) frontier.push_back(s);
        for (Element s : gens) {
            if (!reached[s]) {
                reached[s] = true;
                ++count;
                frontier.push_back(s);
            }
        }
        while (!frontier.empty()) {
            const Element a = frontier.front();
            frontier.pop_front();
            for (Element s : gens) {
                const Element b = mul(a, s);
                if (!reached[b]) {
                    reached[b] = true;
                    ++count;
                    frontier.push_back(b);
                }
            }
        }
    }
    return gens;
}

std::string check_axioms(std::size_t order, const std::function<Element(Element, Element)>& mul) {
    for (Element g = 0; g < order; ++g) {
        if (mul(0, g) != g || mul(g, 0) != g) {
            return "identity: element 0 is not a two-sided identity (witness " + std::to_string(g) + ")";
        }
    }
    for (Element g = 0; g < order; ++g) {
        bool found = false;
        for (Element h = 0; h < order && !found; ++h) found = mul(g, h) == 0 && mul(h, g) == 0;
        if (!found) return "inverses: element " + std::to_string(g) + " has no two-sided inverse";
    }
    auto witness = [](Element a, Element b, Element c) {
        return "associativity: (" + std::to_string(a) + "*" + std::to_string(b) + ")*" + std::to_string(c) +
               " != " + std::to_string(a) + "*(" + std::to_string(b) + "*" + std::to_string(c) + ")";
    };
    if (order <= 200) {
        for (Element a = 0; a < order; ++a)
            for (Element b = 0; b < order; ++b) {
                const Element ab = mul(a, b);
                for (Element c = 0; c < order; ++c) {
                    if (mul(ab, c) != mul(a, mul(b, c))) return witness(a, b, c);
                }
            }
        return {};
    }
    for (Element b : magma_generators(order, mul))
        for (Element a = 0; a < order; ++a) {
            const Element ab = mul(a, b);
            for (Element c = 0; c < order; ++c) {
                if (mul(ab, c) != mul(a, mul(b, c))) return witness(a, b, c);
            }
        }
    return {};
}

}  // namespace

std::string check_group_axioms(const FiniteGroup& group) {
    return check_axioms(group.order(), [&](Element a, Element b) { return group.multiply(a, b); });
}

FiniteGroup make_from_table(const std::vector<std::vector<Element>>& table) {
    const std::size_t order = table.size();
    if (order == 0) throw NotAGroup("latin square: empty table");
    for (std::size_t r = 0; r < order; ++r) {
        if (table[r].size() != order) throw NotAGroup("latin square: row " + std::to_string(r) + " has wrong length");
    }
    for (std::size_t r = 0; r < order; ++r) {
        std::vector<bool> row_seen(order, false), col_seen(order, false);
        for (std::size_t c = 0; c < order; ++c) {
            const Element a = table[r][c];
            const Element b = table[c][r];
            if (a >= order || b >= order) throw NotAGroup("latin square: entry out of range in row/column " + std::to_string(r));
            if (row_seen[a]) throw NotAGroup("latin square: row " + std::to_string(r) + " repeats " + std::to_string(a));
            if (col_seen[b]) throw NotAGroup("latin square: column " + std::to_string(r) + " repeats " + std::to_string(b));
            row_seen[a] = col_seen[b] = true;
        }
    }
    const auto mul = [&](Element a, Element b) { return table[a][b]; };
    const std::string failure = check_axioms(order, mul);
    if (!failure.empty()) throw NotAGroup(failure);

    auto model = std::make_shared<TableModel>();
    model->kind = GroupKind::Table;
    model->order = order;
    model->table.resize(order * order);
    for (std::size_t r = 0; r < order; ++r)
        for (std::size_t c = 0; c < order; ++c) model->table[r * order + c] = table[r][c];
    return FiniteGroup(finish(model));
}

const std::vector<ConjugacyClass>& conjugacy_classes(const FiniteGroup& group) { return group.classes(); }

void write_cayley_table(std::ostream& out, const FiniteGroup& group) {
    const std::size_t n = group.order();
    out << n << '\n';
    for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
            if (b > 0) out << ' ';
            out << group.multiply(a, b);
        }
        out << '\n';
    }
}

FiniteGroup read_cayley_table(std::istream& in) {
    long long order = 0;
    if (!(in >> order) || order < 1 || order > 20000) throw SchemaError("cayley table: bad order line");
    std::vector<std::vector<Element>> table(order, std::vector<Element>(order));
    for (auto& row : table) {
        for (auto& v : row) {
            long long x = 0;
            if (!(in >> x) || x < 0) throw SchemaError("cayley table: truncated or negative entry");
            v = static_cast<Element>(x);
        }
    }
    return make_from_table(table);
}

// ---------------------------------------------------------------------------
// Actions

GroupAction GroupAction::from_table(FiniteGroup group, std::size_t point_count, std::vector<std::uint32_t> table) {
    const std::size_t order = group.order();
    if (point_count == 0) throw InvalidArgument("action needs at least one point");
    if (table.size() != order * point_count) throw InvalidArgument("action table has wrong size");
    for (Element g = 0; g < order; ++g) {
        std::vector<bool> seen(point_count, false);
        for (std::size_t p = 0; p < point_count; ++p) {
            const auto img = table[g * point_count + p];
            if (img >= point_count || seen[img]) {
                throw InvalidArgument("action: element " + std::to_string(g) + " does not permute the points");
            }
            seen[img] = true;
        }
    }
    for (std::size_t p = 0; p < point_count; ++p) {
        if (table[p] != p) throw InvalidArgument("action: identity moves point " + std::to_string(p));
    }
    const auto gens = magma_generators(order, [&](Element a, Element b) { return group.multiply(a, b); });
    for (Element g = 0; g < order; ++g)
        for (Element h : gens) {
            const Element gh = group.multiply(g, h);
            for (std::size_t p = 0; p < point_count; ++p) {
                if (table[g * point_count + table[h * point_count + p]] != table[gh * point_count + p]) {
                    throw InvalidArgument("action: g.(h.p) != (gh).p for g=" + std::to_string(g) +
                                          " h=" + std::to_string(h) + " p=" + std::to_string(p));
                }
            }
        }
    return GroupAction(std::move(group), point_count, std::move(table));
}

GroupAction GroupAction::from_generators(std::size_t point_count,
                                         const std::vector<std::vector<std::uint32_t>>& generators,
                                         std::size_t max_order) {
    using Perm = std::vector<std::uint32_t>;
    for (const auto& gen : generators) {
        Perm sorted = gen;
        std::sort(sorted.begin(), sorted.end());
        bool ok = sorted.size() == point_count;
        for (std::size_t i = 0; ok && i < point_count; ++i) ok = sorted[i] == i;
        if (!ok) throw InvalidArgument("generator is not a permutation of the points");
    }
    Perm identity(point_count);
    std::iota(identity.begin(), identity.end(), 0u);
    std::vector<Perm> elements = {identity};
    std::map<Perm, Element> index = {{identity, 0}};
    auto compose = [&](const Perm& a, const Perm& b) {
        Perm c(point_count);
        for (std::size_t p = 0; p < point_count; ++p) c[p] = a[b[p]];
        return c;
    };
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (const auto& gen : generators) {
            Perm next = compose(gen, elements[i]);
            if (index.emplace(next, static_cast<Element>(elements.size())).second) {
                elements.push_back(std::move(next));
                if (elements.size() > max_order) {
                    throw InvalidArgument("generator closure exceeds " + std::to_string(max_order) + " elements");
                }
            }
        }
    }
    const std::size_t order = elements.size();
    std::vector<std::vector<Element>> table(order, std::vector<Element>(order));
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b) table[a][b] = index.at(compose(elements[a], elements[b]));
    std::vector<std::uint32_t> action(order * point_count);
    for (std::size_t g = 0; g < order; ++g)
        for (std::size_t p = 0; p < point_count; ++p) action[g * point_count + p] = elements[g][p];
    return GroupAction(make_from_table(table), point_count, std::move(action));
}

GroupAction read_action(std::istream& in, const std::optional<FiniteGroup>& group) {
    std::string kind;
    if (!(in >> kind)) throw SchemaError("action file: missing header");
    auto read_row = [&](std::size_t count) {
        std::vector<std::uint32_t> row(count);
        for (auto& v : row) {
            long long x = 0;
            if (!(in >> x) || x < 0) throw SchemaError("action file: truncated or negative entry");
            v = static_cast<std::uint32_t>(x);
        }
        return row;
    };
    if (kind == "generators") {
        long long points = 0, count = 0;
        if (!(in >> points >> count) || points < 1 || count < 0) throw SchemaError("action file: bad generators header");
        std::vector<std::vector<std::uint32_t>> gens;
        for (long long i = 0; i < count; ++i) gens.push_back(read_row(static_cast<std::size_t>(points)));
        return GroupAction::from_generators(static_cast<std::size_t>(points), gens);
    }
    if (kind == "table") {
        long long order = 0, points = 0;
        if (!(in >> order >> points) || order < 1 || points < 1) throw SchemaError("action file: bad table header");
        if (!group) throw SchemaError("action file: table format requires a group");
        if (static_cast<std::size_t>(order) != group->order()) throw SchemaError("action file: order mismatch");
        auto table = read_row(static_cast<std::size_t>(order * points));
        return GroupAction::from_table(*group, static_cast<std::size_t>(points), std::move(table));
    }
    throw SchemaError("action file: unknown header '" + kind + "'");
}

}  // namespace ctheta
