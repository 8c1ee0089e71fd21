#include "ctheta/graphs.hpp"

#include "ctheta/errors.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace ctheta {

ConnectionSet::ConnectionSet(FiniteGroup group, std::vector<Element> elements)
    : group_(std::move(group)), elements_(std::move(elements)), member_(group_.order(), false) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    for (Element x : elements_) {
        if (x >= group_.order()) throw InvalidArgument("connection element " + std::to_string(x) + " is not in the group");
        member_[x] = true;
    }
    if (!elements_.empty() && elements_.front() == group_.identity()) {
        throw InvalidArgument("connection set contains the identity");
    }
    for (Element x : elements_) {
        if (!member_[group_.invert(x)]) {
            throw InvalidArgument("connection set is not inverse-closed: contains " + group_.element_label(x) +
                                  " but not its inverse " + group_.element_label(group_.invert(x)));
        }
    }
    const auto& classes = group_.classes();
    std::vector<std::size_t> hit(classes.size(), 0);
    for (Element x : elements_) ++hit[group_.class_of(x)];
    std::vector<std::size_t> full;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (hit[c] == 0) continue;
        if (hit[c] != classes[c].size) return;
        full.push_back(c);
    }
    classes_ = std::move(full);
}

ConnectionSet ConnectionSet::from_elements(const FiniteGroup& group, std::vector<Element> elements) {
    return ConnectionSet(group, std::move(elements));
}

ConnectionSet ConnectionSet::from_classes(const FiniteGroup& group, std::vector<std::size_t> classes) {
    std::vector<Element> elements;
    for (std::size_t c : classes) {
        if (c >= group.classes().size()) throw InvalidArgument("class index " + std::to_string(c) + " out of range");
        const auto& members = group.classes()[c].members;
        elements.insert(elements.end(), members.begin(), members.end());
    }
    return ConnectionSet(group, std::move(elements));
}

ConnectionSet ConnectionSet::empty(const FiniteGroup& group) { return ConnectionSet(group, {}); }

Graph Graph::from_edges(std::size_t vertex_count, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    Graph g(vertex_count);
    for (auto [u, v] : edges) {
        if (u >= vertex_count || v >= vertex_count) {
            throw InvalidArgument("edge {" + std::to_string(u) + ", " + std::to_string(v) + "} has an endpoint out of range");
        }
        if (u == v) throw InvalidArgument("loop at vertex " + std::to_string(u));
        g.adjacency_[u].push_back(v);
        g.adjacency_[v].push_back(u);
    }
    for (auto& list : g.adjacency_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return g;
}

std::size_t Graph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& list : adjacency_) twice += list.size();
    return twice / 2;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    const auto& list = adjacency_[u];
    return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < adjacency_.size(); ++u)
        for (Vertex v : adjacency_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph build_cayley(const ConnectionSet& connection, std::size_t max_order) {
    const FiniteGroup& group = connection.group();
    if (group.order() > max_order) {
        throw SizeLimit("Cayley graph on " + std::to_string(group.order()) + " vertices exceeds the limit of " +
                        std::to_string(max_order));
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Element y = 0; y < group.order(); ++y)
        for (Element s : connection.elements()) {
            const Element x = group.multiply(y, s);
            if (y < x) edges.emplace_back(y, x);
        }
    return Graph::from_edges(group.order(), edges);
}

Graph read_graph(std::istream& in) {
    std::string word_v, word_e;
    long long m = -1, k = -1;
    if (!(in >> word_v >> m >> word_e >> k) || word_v != "vertices" || word_e != "edges" || m < 0 || k < 0) {
        throw InvalidArgument("graph file must start with \"vertices <m> edges <k>\"");
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(static_cast<std::size_t>(k));
    for (long long i = 0; i < k; ++i) {
        long long u = -1, v = -1;
        if (!(in >> u >> v)) throw InvalidArgument("graph file: expected " + std::to_string(k) + " edges, got " + std::to_string(i));
        if (u < 0 || v < 0 || u >= m || v >= m) {
            throw InvalidArgument("graph file: edge " + std::to_string(i) + " has an endpoint out of range");
        }
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    std::string extra;
    if (in >> extra) throw InvalidArgument("graph file: trailing content after the edge list");
    return Graph::from_edges(static_cast<std::size_t>(m), edges);
}

void write_graph(std::ostream& out, const Graph& graph) {
    const auto edges = graph.edges();
    out << "vertices " << graph.vertex_count() << " edges " << edges.size() << '\n';
    for (auto [u, v] : edges) out << u << ' ' << v << '\n';
}

bool is_independent_set(const Graph& graph, const std::vector<Vertex>& set) {
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set[i] >= graph.vertex_count()) return false;
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (set[i] == set[j] || graph.adjacent(set[i], set[j])) return false;
    }
    return true;
}

namespace {

class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t n) : words_((n + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    bool none() const {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
    }
    std::size_t count_and(const Bits& other) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
        return c;
    }
    Bits operator&(const Bits& other) const {
        Bits out = *this;
        for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= other.words_[i];
        return out;
    }
    Bits minus(const Bits& other) const {
        Bits out = *this;
        for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= ~other.words_[i];
        return out;
    }
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }
    std::optional<std::size_t> first() const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
        return std::nullopt;
    }

private:
    std::vector<std::uint64_t> words_;
};

class BudgetExpired {};

class MaxWeightIndependentSet {
public:
    MaxWeightIndependentSet(std::vector<Bits> adjacency, std::vector<std::size_t> weights,
                            std::optional<std::chrono::duration<double>> budget)
        : adj_(std::move(adjacency)), weight_(std::move(weights)), n_(weight_.size()) {
        if (budget) deadline_ = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(*budget);
    }

    void run() {
        Bits all(n_);
        for (std::size_t v = 0; v < n_; ++v) all.set(v);
        greedy_incumbent(all);
        root_bound_ = clique_cover_bound(all);
        std::vector<std::size_t> chosen;
        try {
            search(all, 0, chosen);
            finished_ = true;
        } catch (const BudgetExpired&) {
            finished_ = false;
        }
    }

    bool finished() const { return finished_; }
    std::size_t best() const { return best_; }
    std::size_t root_bound() const { return root_bound_; }
    const std::vector<std::size_t>& best_set() const { return best_set_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    void greedy_incumbent(Bits candidates) {
        std::vector<std::size_t> chosen;
        std::size_t total = 0;
        while (auto v = min_degree_vertex(candidates)) {
            chosen.push_back(*v);
            total += weight_[*v];
            candidates = candidates.minus(adj_[*v]);
            candidates.reset(*v);
        }
        best_ = total;
        best_set_ = chosen;
    }

    std::optional<std::size_t> min_degree_vertex(const Bits& candidates) const {
        std::optional<std::size_t> pick;
        std::size_t pick_degree = 0;
        candidates.for_each([&](std::size_t v) {
            const std::size_t d = adj_[v].count_and(candidates);
            if (!pick || d < pick_degree) {
                pick = v;
                pick_degree = d;
            }
        });
        return pick;
    }

    std::size_t weight_of(const Bits& set) const {
        std::size_t total = 0;
        set.for_each([&](std::size_t v) { total += weight_[v]; });
        return total;
    }

    // Each clique contributes at most one vertex to an independent set.
    std::size_t clique_cover_bound(Bits remaining) const {
        std::size_t bound = 0;
        while (auto start = remaining.first()) {
            std::size_t heaviest = weight_[*start];
            remaining.reset(*start);
            Bits extend = remaining & adj_[*start];
            while (auto next = extend.first()) {
                heaviest = std::max(heaviest, weight_[*next]);
                remaining.reset(*next);
                extend.reset(*next);
                extend = extend & adj_[*next];
            }
            bound += heaviest;
        }
        return bound;
    }

    void search(const Bits& candidates, std::size_t current, std::vector<std::size_t>& chosen) {
        ++nodes_;
        if (deadline_ && (nodes_ & 1023U) == 0 && std::chrono::steady_clock::now() > *deadline_) throw BudgetExpired{};
        if (candidates.none()) {
            if (current > best_) {
                best_ = current;
                best_set_ = chosen;
            }
            return;
        }
        if (current + weight_of(candidates) <= best_) return;
        if (current + clique_cover_bound(candidates) <= best_) return;

        std::optional<std::size_t> branch;
        std::size_t branch_degree = 0;
        candidates.for_each([&](std::size_t v) {
            const std::size_t d = adj_[v].count_and(candidates);
            if (!branch || d > branch_degree) {
                branch = v;
                branch_degree = d;
            }
        });
        const std::size_t v = *branch;
        if (branch_degree == 0) {
            const std::size_t before = chosen.size();
            candidates.for_each([&](std::size_t u) { chosen.push_back(u); });
            const std::size_t total = current + weight_of(candidates);
            if (total > best_) {
                best_ = total;
                best_set_ = chosen;
            }
            chosen.resize(before);
            return;
        }
        Bits with = candidates.minus(adj_[v]);
        with.reset(v);
        chosen.push_back(v);
        search(with, current + weight_[v], chosen);
        chosen.pop_back();
        Bits without = candidates;
        without.reset(v);
        search(without, current, chosen);
    }

    std::vector<Bits> adj_;
    std::vector<std::size_t> weight_;
    std::size_t n_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    std::size_t best_ = 0;
    std::vector<std::size_t> best_set_;
    std::size_t root_bound_ = 0;
    std::uint64_t nodes_ = 0;
    bool finished_ = false;
};

}  // namespace

AlphaResult alpha(const Graph& graph, std::optional<std::chrono::duration<double>> budget) {
    const std::size_t n = graph.vertex_count();
    AlphaResult result;
    if (n == 0) {
        result.exact = true;
        return result;
    }
    // Merge false twins: vertices with identical neighbourhoods.
    std::map<std::vector<Vertex>, std::size_t> twin_class;
    std::vector<std::vector<Vertex>> members;
    std::vector<std::size_t> class_of(n);
    for (Vertex v = 0; v < n; ++v) {
        auto [it, inserted] = twin_class.try_emplace(graph.neighbors(v), members.size());
        if (inserted) members.emplace_back();
        members[it->second].push_back(v);
        class_of[v] = it->second;
    }
    const std::size_t reduced = members.size();
    std::vector<Bits> adjacency(reduced, Bits(reduced));
    std::vector<std::size_t> weights(reduced);
    for (std::size_t c = 0; c < reduced; ++c) {
        weights[c] = members[c].size();
        for (Vertex u : graph.neighbors(members[c].front())) adjacency[c].set(class_of[u]);
    }

    MaxWeightIndependentSet solver(std::move(adjacency), std::move(weights), budget);
    solver.run();
    for (std::size_t c : solver.best_set())
        for (Vertex v : members[c]) result.witness.push_back(v);
    std::sort(result.witness.begin(), result.witness.end());
    result.lower = result.witness.size();
    result.exact = solver.finished();
    result.upper = result.exact ? result.lower : std::max(result.lower, solver.root_bound());
    result.nodes = solver.nodes();
    return result;
}

ConnectionSet blowup_connection(const GroupAction& action, const Graph& graph, Vertex base_point) {
    const FiniteGroup& group = action.group();
    const std::size_t points = graph.vertex_count();
    if (action.point_count() != points) {
        throw InvalidArgument("action is on " + std::to_string(action.point_count()) + " points but the graph has " +
                              std::to_string(points) + " vertices");
    }
    if (base_point >= points) throw InvalidArgument("base point " + std::to_string(base_point) + " out of range");

    std::vector<std::size_t> orbit_id(points, points);
    std::vector<std::vector<Vertex>> orbits;
    for (Vertex start = 0; start < points; ++start) {
        if (orbit_id[start] != points) continue;
        std::vector<Vertex> orbit;
        for (Element g = 0; g < group.order(); ++g) {
            const Vertex image = action.act(g, start);
            if (orbit_id[image] == points) {
                orbit_id[image] = orbits.size();
                orbit.push_back(image);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
    if (orbits.size() != 1) {
        std::ostringstream msg;
        msg << "action is not transitive; orbits:";
        for (const auto& orbit : orbits) {
            msg << " {";
            for (std::size_t i = 0; i < orbit.size(); ++i) msg << (i ? "," : "") << orbit[i];
            msg << '}';
        }
        throw NotTransitive(msg.str());
    }

    const auto edges = graph.edges();
    for (Element g = 0; g < group.order(); ++g)
        for (auto [u, v] : edges) {
            if (!graph.adjacent(action.act(g, u), action.act(g, v))) {
                throw NotAutomorphism("element " + group.element_label(g) + " maps edge {" + std::to_string(u) + ", " +
                                      std::to_string(v) + "} to the non-edge {" + std::to_string(action.act(g, u)) +
                                      ", " + std::to_string(action.act(g, v)) + "}");
            }
        }

    std::vector<Element> connection;
    for (Element g = 0; g < group.order(); ++g)
        if (graph.adjacent(base_point, action.act(g, base_point))) connection.push_back(g);
    return ConnectionSet::from_elements(group, std::move(connection));
}

}  // namespace ctheta
