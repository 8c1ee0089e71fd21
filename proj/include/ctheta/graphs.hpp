#pragma once

#include "ctheta/groups.hpp"

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace ctheta {

// Inverse-closed subset of a group avoiding the identity. When the set is a
// union of conjugacy classes, `classes()` lists them.
class ConnectionSet {
public:
    static ConnectionSet from_elements(const FiniteGroup& group, std::vector<Element> elements);
    static ConnectionSet from_classes(const FiniteGroup& group, std::vector<std::size_t> classes);
    static ConnectionSet empty(const FiniteGroup& group);

    const FiniteGroup& group() const { return group_; }
    const std::vector<Element>& elements() const { return elements_; }
    const std::optional<std::vector<std::size_t>>& classes() const { return classes_; }
    bool conjugation_closed() const { return classes_.has_value(); }
    bool contains(Element g) const { return member_[g]; }
    std::size_t size() const { return elements_.size(); }

private:
    ConnectionSet(FiniteGroup group, std::vector<Element> elements);

    FiniteGroup group_;
    std::vector<Element> elements_;
    std::vector<bool> member_;
    std::optional<std::vector<std::size_t>> classes_;
};

using Vertex = std::uint32_t;

class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t vertex_count) : adjacency_(vertex_count) {}

    // Rejects loops and out-of-range endpoints; repeated edges collapse.
    static Graph from_edges(std::size_t vertex_count, const std::vector<std::pair<Vertex, Vertex>>& edges);

    std::size_t vertex_count() const { return adjacency_.size(); }
    std::size_t edge_count() const;
    const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[v]; }
    bool adjacent(Vertex u, Vertex v) const;
    std::vector<std::pair<Vertex, Vertex>> edges() const;  // u < v, lexicographic

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<Vertex>> adjacency_;  // sorted
};

// Vertices are element indices; {x, y} is an edge iff y^-1 x lies in X.
Graph build_cayley(const ConnectionSet& connection, std::size_t max_order = 5000);

// Graph file: "vertices m edges k" followed by k lines "u v", 0-based.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& graph);

struct AlphaResult {
    bool exact = false;
    std::size_t lower = 0;  // size of `witness`
    std::size_t upper = 0;  // equals `lower` when exact
    std::vector<Vertex> witness;
    std::uint64_t nodes = 0;
};

// Maximum independent set by branch-and-bound. False twins (equal
// neighbourhoods) are merged into weighted vertices first; the search branches
// on a vertex of maximum degree in the candidate set (ties to the lowest
// index), bounds with a greedy weighted clique cover and prunes against the
// incumbent. Without a budget the answer is exact.
AlphaResult alpha(const Graph& graph, std::optional<std::chrono::duration<double>> budget = std::nullopt);

bool is_independent_set(const Graph& graph, const std::vector<Vertex>& set);

// X = { g : {x0, g.x0} is an edge }. Verifies that every group element maps
// edges to edges and that the action is transitive.
ConnectionSet blowup_connection(const GroupAction& action, const Graph& graph, Vertex base_point = 0);

}  // namespace ctheta
