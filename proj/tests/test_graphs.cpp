#include "ctheta/characters.hpp"
#include "ctheta/errors.hpp"
#include "ctheta/graphs.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace ctheta {
namespace {

std::vector<std::vector<bool>> adjacency_of(const Graph& g) {
    std::vector<std::vector<bool>> adj(g.vertex_count(), std::vector<bool>(g.vertex_count(), false));
    for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = true;
    return adj;
}

Graph random_graph(std::size_t n, double p, std::mt19937& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng)) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

std::size_t component_count(const Graph& g) {
    std::vector<int> seen(g.vertex_count(), 0);
    std::size_t count = 0;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (seen[s]) continue;
        ++count;
        std::vector<Vertex> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
    }
    return count;
}

TEST(ConnectionSetTest, ValidatesInvariants) {
    const FiniteGroup z5 = make_abelian_product(std::vector<int>{5});
    EXPECT_THROW(ConnectionSet::from_elements(z5, {0, 1, 4}), InvalidArgument);
    EXPECT_THROW(ConnectionSet::from_elements(z5, {1}), InvalidArgument);
    EXPECT_THROW(ConnectionSet::from_elements(z5, {7}), InvalidArgument);
    const ConnectionSet x = ConnectionSet::from_elements(z5, {4, 1});
    EXPECT_EQ(x.elements(), (std::vector<Element>{1, 4}));
    EXPECT_TRUE(x.conjugation_closed());

    const FiniteGroup s3 = make_symmetric(3);
    EXPECT_THROW(ConnectionSet::from_classes(s3, {0}), InvalidArgument);
    const ConnectionSet threes = ConnectionSet::from_classes(s3, {2});
    EXPECT_EQ(threes.size(), 2u);
    std::vector<Element> one_transposition{s3.classes()[1].members.front()};
    EXPECT_FALSE(ConnectionSet::from_elements(s3, one_transposition).conjugation_closed());
}

TEST(CayleyTest, CyclicFiveIsTheFiveCycle) {
    const FiniteGroup z5 = make_abelian_product(std::vector<int>{5});
    EXPECT_EQ(build_cayley(ConnectionSet::from_elements(z5, {1, 4})), fixtures::cycle(5));
}

TEST(CayleyTest, S3ThreeCyclesGiveTwoTriangles) {
    const FiniteGroup s3 = make_symmetric(3);
    const Graph g = build_cayley(ConnectionSet::from_classes(s3, {2}));
    EXPECT_EQ(g.edge_count(), 6u);
    EXPECT_EQ(component_count(g), 2u);
    for (Vertex v = 0; v < 6; ++v) EXPECT_EQ(g.neighbors(v).size(), 2u);
    EXPECT_EQ(alpha(g).lower, 2u);
}

TEST(CayleyTest, EmptyConnectionGivesEmptyGraph) {
    const FiniteGroup s4 = make_symmetric(4);
    const Graph g = build_cayley(ConnectionSet::empty(s4));
    EXPECT_EQ(g.vertex_count(), 24u);
    EXPECT_EQ(g.edge_count(), 0u);
    EXPECT_EQ(alpha(g).lower, 24u);
}

TEST(CayleyTest, AdjacencyRuleAndVertexTransitivity) {
    const FiniteGroup s4 = make_symmetric(4);
    std::vector<Element> x;
    for (std::size_t c : {1u, 4u}) x.insert(x.end(), s4.classes()[c].members.begin(), s4.classes()[c].members.end());
    x.push_back(s4.from_permutation(std::vector<int>{1, 2, 0, 3}));
    x.push_back(s4.from_permutation(std::vector<int>{2, 0, 1, 3}));
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    const ConnectionSet conn = ConnectionSet::from_elements(s4, x);
    EXPECT_FALSE(conn.conjugation_closed());
    const Graph g = build_cayley(conn);
    for (Vertex u = 0; u < 24; ++u) {
        EXPECT_EQ(g.neighbors(u).size(), conn.size());
        for (Vertex v = 0; v < 24; ++v) EXPECT_EQ(g.adjacent(u, v), conn.contains(s4.multiply(s4.invert(v), u)));
    }
    std::mt19937 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        const Element gamma = static_cast<Element>(rng() % 24);
        for (auto [u, v] : g.edges()) EXPECT_TRUE(g.adjacent(s4.multiply(gamma, u), s4.multiply(gamma, v)));
    }
    EXPECT_THROW(build_cayley(conn, 10), SizeLimit);
}

TEST(GraphTest, EdgeValidationAndText) {
    EXPECT_THROW(Graph::from_edges(3, {{0, 0}}), InvalidArgument);
    EXPECT_THROW(Graph::from_edges(3, {{0, 3}}), InvalidArgument);
    const Graph g = Graph::from_edges(4, {{2, 1}, {1, 2}, {0, 3}});
    EXPECT_EQ(g.edge_count(), 2u);
    std::stringstream buf;
    write_graph(buf, g);
    EXPECT_EQ(buf.str(), "vertices 4 edges 2\n0 3\n1 2\n");
    EXPECT_EQ(read_graph(buf), g);
    std::istringstream bad("vertices 2 edges 2\n0 1\n");
    EXPECT_THROW(read_graph(bad), InvalidArgument);
}

TEST(AlphaTest, SmallKnownValues) {
    EXPECT_EQ(alpha(fixtures::cycle(5)).lower, 2u);
    EXPECT_EQ(alpha(fixtures::petersen()).lower, 4u);
    EXPECT_EQ(alpha(Graph(7)).lower, 7u);
    std::vector<std::pair<Vertex, Vertex>> complete;
    for (Vertex u = 0; u < 9; ++u)
        for (Vertex v = u + 1; v < 9; ++v) complete.emplace_back(u, v);
    EXPECT_EQ(alpha(Graph::from_edges(9, complete)).lower, 1u);
    EXPECT_EQ(alpha(Graph(0)).lower, 0u);
}

TEST(AlphaTest, MatchesBruteForceOnRandomGraphs) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t n = 1 + rng() % 28;
        const double p = 0.1 + 0.8 * (trial % 9) / 8.0;
        const Graph g = random_graph(n, p, rng);
        const AlphaResult r = alpha(g);
        ASSERT_TRUE(r.exact);
        EXPECT_EQ(r.lower, r.upper);
        EXPECT_EQ(r.witness.size(), r.lower);
        EXPECT_TRUE(is_independent_set(g, r.witness));
        EXPECT_EQ(r.lower, oracle::brute_alpha(adjacency_of(g))) << "trial " << trial;
    }
}

TEST(AlphaTest, TwinHeavyGraphsMatchBruteForce) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const Graph base = random_graph(8, 0.4, rng);
        const std::size_t copies = 1 + trial % 4;
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (auto [u, v] : base.edges())
            for (std::size_t i = 0; i < copies; ++i)
                for (std::size_t j = 0; j < copies; ++j)
                    edges.emplace_back(static_cast<Vertex>(u * copies + i), static_cast<Vertex>(v * copies + j));
        const Graph g = Graph::from_edges(8 * copies, edges);
        EXPECT_EQ(alpha(g).lower, oracle::brute_alpha(adjacency_of(g)));
    }
}

TEST(AlphaTest, InvariantUnderRelabeling) {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = random_graph(40, 0.3, rng);
        std::vector<Vertex> perm(40);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
        EXPECT_EQ(alpha(g).lower, alpha(Graph::from_edges(40, edges)).lower);
    }
}

TEST(AlphaTest, BudgetGivesCertifiedBounds) {
    std::mt19937 rng(8);
    const Graph g = random_graph(70, 0.1, rng);
    const AlphaResult r = alpha(g, std::chrono::duration<double>(0.0));
    EXPECT_TRUE(is_independent_set(g, r.witness));
    EXPECT_EQ(r.witness.size(), r.lower);
    EXPECT_LE(r.lower, r.upper);
    if (!r.exact) {
        const AlphaResult full = alpha(g);
        ASSERT_TRUE(full.exact);
        EXPECT_LE(r.lower, full.lower);
        EXPECT_GE(r.upper, full.lower);
    }
}

TEST(BlowupTest, RegularActionReturnsTheCycle) {
    const GroupAction z5 = fixtures::rotations(5);
    const ConnectionSet x = blowup_connection(z5, fixtures::cycle(5));
    EXPECT_EQ(x.size(), 2u);
    for (Element g : x.elements()) {
        const Vertex image = z5.act(g, 0);
        EXPECT_TRUE(image == 1 || image == 4);
    }
    EXPECT_EQ(alpha(build_cayley(x)).lower, 2u);
}

TEST(BlowupTest, DihedralTenOnTheFiveCycle) {
    const GroupAction d10 = fixtures::dihedral(5);
    ASSERT_EQ(d10.group().order(), 10u);
    const ConnectionSet x = blowup_connection(d10, fixtures::cycle(5));
    const Graph blown = build_cayley(x);
    EXPECT_EQ(blown.vertex_count(), 10u);
    const std::size_t a = alpha(blown).lower;
    EXPECT_EQ(a, oracle::brute_alpha(adjacency_of(blown)));
    EXPECT_EQ(a, 4u);
    EXPECT_EQ(2u * d10.group().order(), 5u * a);
}

TEST(BlowupTest, BasePointDoesNotChangeAlpha) {
    const GroupAction d10 = fixtures::dihedral(5);
    for (Vertex base = 0; base < 5; ++base)
        EXPECT_EQ(alpha(build_cayley(blowup_connection(d10, fixtures::cycle(5), base))).lower, 4u);
}

TEST(BlowupTest, PetersenWithItsAutomorphismGroup) {
    const GroupAction aut = fixtures::petersen_automorphisms();
    ASSERT_EQ(aut.group().order(), 120u);
    const Graph peter = fixtures::petersen();
    const ConnectionSet x = blowup_connection(aut, peter);
    const AlphaResult r = alpha(build_cayley(x));
    ASSERT_TRUE(r.exact);
    EXPECT_EQ(r.lower, 48u);
    EXPECT_EQ(oracle::brute_alpha(adjacency_of(peter)) * 120u, 10u * r.lower);
}

TEST(BlowupTest, RejectsBadActions) {
    const Graph c6 = fixtures::cycle(6);
    const GroupAction two_orbits = GroupAction::from_generators(6, {{2, 3, 4, 5, 0, 1}});
    try {
        blowup_connection(two_orbits, c6);
        FAIL();
    } catch (const NotTransitive& e) {
        EXPECT_NE(std::string(e.what()).find("{0,2,4}"), std::string::npos) << e.what();
    }
    const GroupAction shuffle = GroupAction::from_generators(5, {{1, 2, 3, 4, 0}, {1, 0, 2, 3, 4}});
    EXPECT_THROW(blowup_connection(shuffle, fixtures::cycle(5)), NotAutomorphism);
    EXPECT_THROW(blowup_connection(fixtures::rotations(5), c6), InvalidArgument);
}

}  // namespace
}  // namespace ctheta
