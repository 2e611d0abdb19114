#include <gtest/gtest.h>

#include <random>

#include "pfact/cycles.hpp"
#include "pfact/isomorphism.hpp"
#include "support.hpp"

using namespace pfact;
using test_support::load;
using test_support::to_graph;
using test_support::to_small;

namespace {

oracle::edge_list as_pairs(const Graph& g, const std::vector<EdgeId>& ids)
{
    oracle::edge_list out;
    for (EdgeId e : ids)
        out.emplace_back(g.edge(e).u, g.edge(e).v);
    std::sort(out.begin(), out.end());
    return out;
}

// spanning 2-regular edge subsets by exhaustive subset search
std::set<oracle::edge_list> brute_two_factors(const oracle::small_graph& g)
{
    std::set<oracle::edge_list> out;
    int m = static_cast<int>(g.edges.size());
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        if (__builtin_popcount(mask) != g.n)
            continue;
        std::vector<int> deg(g.n, 0);
        oracle::edge_list es;
        for (int i = 0; i < m; ++i)
            if (mask >> i & 1) {
                ++deg[g.edges[i].first];
                ++deg[g.edges[i].second];
                es.push_back(g.edges[i]);
            }
        if (std::all_of(deg.begin(), deg.end(), [](int x) { return x == 2; }))
            out.insert(es);
    }
    return out;
}

}  // namespace

TEST(HamiltonianCycles, KnownCounts)
{
    EXPECT_EQ(count_hamiltonian_cycles(complete_graph(4)), 3u);
    EXPECT_EQ(count_hamiltonian_cycles(complete_graph(5)), 12u);
    EXPECT_EQ(count_hamiltonian_cycles(complete_graph(6)), 60u);
    EXPECT_EQ(count_hamiltonian_cycles(*load("cube").graph), 6u);
    EXPECT_EQ(count_hamiltonian_cycles(*load("dodecahedron").graph), 30u);
    EXPECT_EQ(count_hamiltonian_cycles(*load("icosahedron").graph), 1280u);
    EXPECT_EQ(count_hamiltonian_cycles(cycle_graph(7)), 1u);
}

TEST(HamiltonianCycles, AgreeWithPermutationOracle)
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 3 + static_cast<int>(rng() % 6);
        Graph g = to_graph(oracle::random_graph(n, 0.6, rng));
        std::set<oracle::edge_list> got;
        for (auto& c : hamiltonian_cycles(g)) {
            EXPECT_TRUE(is_cycle_in(g, c));
            EXPECT_EQ(static_cast<int>(c.size()), n);
            got.insert(as_pairs(g, cycle_edges(g, c)));
        }
        EXPECT_EQ(got, oracle::hamiltonian_cycles(to_small(g)));
    }
}

TEST(HamiltonianCycles, RequiredAndForbidden)
{
    Graph k5 = complete_graph(5);
    std::vector<EdgeId> one{0};
    EXPECT_EQ(count_hamiltonian_cycles(k5, one), 6u);  // 12 cycles of 5 edges spread over 10 edges
    std::vector<EdgeId> path{k5.edge_id(0, 1), k5.edge_id(1, 2)};
    EXPECT_EQ(count_hamiltonian_cycles(k5, path), 2u);
    std::vector<EdgeId> star{k5.edge_id(0, 1), k5.edge_id(0, 2), k5.edge_id(0, 3)};
    EXPECT_THROW(count_hamiltonian_cycles(k5, star), error);
    std::vector<Vertex> gone{4};
    EXPECT_EQ(count_hamiltonian_cycles(k5, {}, gone), 3u);  // cycles of the K4 left behind
}

TEST(HamiltonianCycles, RequiredEdgesAgreeWithFiltering)
{
    auto doc = load("octahedron");
    const Graph& g = *doc.graph;
    auto all = hamiltonian_cycles(g);
    for (EdgeId a = 0; a < g.size(); ++a)
        for (EdgeId b = a + 1; b < g.size(); ++b) {
            std::size_t expected = 0;
            for (auto& c : all) {
                auto ids = cycle_edges(g, c);
                expected += std::count(ids.begin(), ids.end(), a) && std::count(ids.begin(), ids.end(), b);
            }
            std::vector<EdgeId> req{a, b};
            EXPECT_EQ(count_hamiltonian_cycles(g, req), expected);
        }
}

TEST(HamiltonianCycles, NonHamiltonianGraphs)
{
    Graph petersen(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                        {5, 7}, {7, 9}, {6, 9}, {6, 8}, {5, 8}});
    EXPECT_FALSE(find_hamiltonian_cycle(petersen));
    EXPECT_FALSE(find_hamiltonian_cycle(Graph(4, {{0, 1}, {1, 2}, {2, 3}})));
    EXPECT_FALSE(find_hamiltonian_cycle(Graph(2, {{0, 1}})));
}

TEST(TwoFactors, AgreeWithSubsetOracle)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 4 + static_cast<int>(rng() % 4);
        Graph g = to_graph(oracle::random_graph(n, 0.65, rng));
        if (g.size() > 20)
            continue;
        std::set<oracle::edge_list> got;
        for (auto& f : two_factors(g)) {
            EXPECT_TRUE(is_two_factor_of(g, f));
            got.insert(as_pairs(g, two_factor_edges(g, f)));
        }
        EXPECT_EQ(got, brute_two_factors(to_small(g)));
    }
}

TEST(TwoFactors, ShapeFilter)
{
    Graph k6 = complete_graph(6);
    // two disjoint triangles: 10 ways to split six vertices in halves
    EXPECT_EQ(two_factors(k6, std::vector<int>{3, 3}).size(), 10u);
    EXPECT_EQ(two_factors(k6, std::vector<int>{6}).size(), 60u);
    EXPECT_EQ(two_factors(k6).size(), 70u);
    for (auto& f : two_factors(k6, std::vector<int>{3, 3}))
        EXPECT_EQ(two_factor_shape(f), (std::vector<int>{3, 3}));
}

TEST(TwoFactors, IcosahedronFourAndEight)
{
    auto doc = load("icosahedron");
    const Graph& g = *doc.graph;
    // a 4-cycle in the icosahedron is the rim of a diamond, and the other
    // eight vertices must carry a hamiltonian cycle of what is left
    std::size_t expected = 0;
    for (auto& d : diamonds(g)) {
        auto [x, y] = g.edge(d.shared);
        std::vector<Vertex> gone{x, y, d.tip_first, d.tip_second};
        expected += count_hamiltonian_cycles(g, {}, gone);
    }
    EXPECT_EQ(two_factors(g, std::vector<int>{4, 8}).size(), expected);
}

TEST(Cycles, CanonicalFormAndValidation)
{
    EXPECT_EQ(canonical_cycle({3, 1, 2, 0}), (Cycle{0, 2, 1, 3}));
    EXPECT_EQ(canonical_cycle({2, 0, 1}), canonical_cycle({1, 0, 2}));
    Graph c5 = cycle_graph(5);
    EXPECT_TRUE(is_cycle_in(c5, {0, 1, 2, 3, 4}));
    EXPECT_FALSE(is_cycle_in(c5, {0, 1, 2}));
    EXPECT_FALSE(is_cycle_in(c5, {0, 1, 2, 1}));
}

TEST(Isomorphism, AgreesWithPermutationOracle)
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 3 + static_cast<int>(rng() % 5);
        auto a = oracle::random_graph(n, 0.5, rng);
        oracle::small_graph b;
        if (trial % 2) {
            std::vector<int> p(n);
            std::iota(p.begin(), p.end(), 0);
            std::shuffle(p.begin(), p.end(), rng);
            oracle::edge_list es;
            for (auto [u, v] : a.edges)
                es.emplace_back(p[u], p[v]);
            b = oracle::make(n, es);
        } else {
            b = oracle::random_graph(n, 0.5, rng);
        }
        Graph ga = to_graph(a), gb = to_graph(b);
        auto r = is_isomorphic(ga, gb);
        EXPECT_EQ(r.isomorphic, oracle::isomorphic(a, b));
        if (r.isomorphic) {
            EXPECT_TRUE(is_isomorphism(ga, gb, r.witness));
        }
    }
}

TEST(Isomorphism, CanonicalFormIsInvariant)
{
    auto doc = load("quintic20");
    const Graph& g = *doc.graph;
    std::mt19937_64 rng(3);
    auto base = canonical_form(g).certificate;
    for (int t = 0; t < 5; ++t) {
        std::vector<Vertex> p(g.order());
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        EXPECT_EQ(canonical_form(relabel(g, p)).certificate, base);
    }
    EXPECT_NE(canonical_form(*load("order22").graph).certificate, base);
}

TEST(Isomorphism, RegularGraphsThatDiffer)
{
    auto a = load("cubic16a"), b = load("cubic16b");
    EXPECT_EQ(a.graph->order(), b.graph->order());
    EXPECT_FALSE(is_isomorphic(*a.graph, *b.graph).isomorphic);
    auto c = load("quartic14a"), d = load("quartic14b");
    EXPECT_FALSE(is_isomorphic(*c.graph, *d.graph).isomorphic);
}
