#pragma once

// Graphs and actions shared by the unit and acceptance tests.

#include "ctheta/graphs.hpp"
#include "ctheta/groups.hpp"

#include <utility>
#include <vector>

namespace fixtures {

using ctheta::GroupAction;
using ctheta::Graph;
using ctheta::Vertex;

inline Graph cycle(std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i < n; ++i) edges.emplace_back(i, static_cast<Vertex>((i + 1) % n));
    return Graph::from_edges(n, edges);
}

inline GroupAction rotations(std::uint32_t n) {
    std::vector<std::uint32_t> r(n);
    for (std::uint32_t i = 0; i < n; ++i) r[i] = (i + 1) % n;
    return GroupAction::from_generators(n, {r});
}

inline GroupAction dihedral(std::uint32_t n) {
    std::vector<std::uint32_t> r(n), s(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        r[i] = (i + 1) % n;
        s[i] = (n - i) % n;
    }
    return GroupAction::from_generators(n, {r, s});
}

// Vertices are the 2-subsets of {0..4} in lexicographic order; disjoint
// pairs are adjacent.
inline std::vector<std::pair<int, int>> petersen_pairs() {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) pairs.emplace_back(a, b);
    return pairs;
}

inline Graph petersen() {
    const auto pairs = petersen_pairs();
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < 10; ++u)
        for (Vertex v = u + 1; v < 10; ++v) {
            const auto [a, b] = pairs[u];
            const auto [c, d] = pairs[v];
            if (a != c && a != d && b != c && b != d) edges.emplace_back(u, v);
        }
    return Graph::from_edges(10, edges);
}

// S_5 acting on the 2-subsets, generated by a 5-cycle and a transposition.
inline GroupAction petersen_automorphisms() {
    const auto pairs = petersen_pairs();
    auto induced = [&](const std::vector<int>& perm) {
        std::vector<std::uint32_t> image(10);
        for (std::size_t v = 0; v < 10; ++v) {
            int a = perm[static_cast<std::size_t>(pairs[v].first)], b = perm[static_cast<std::size_t>(pairs[v].second)];
            if (a > b) std::swap(a, b);
            for (std::uint32_t w = 0; w < 10; ++w)
                if (pairs[w] == std::make_pair(a, b)) image[v] = w;
        }
        return image;
    };
    return GroupAction::from_generators(10, {induced({1, 2, 3, 4, 0}), induced({1, 0, 2, 3, 4})});
}

}  // namespace fixtures
