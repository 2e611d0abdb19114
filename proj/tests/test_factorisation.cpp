#include <gtest/gtest.h>

#include <random>

#include "pfact/analysis.hpp"
#include "pfact/colouring.hpp"
#include "pfact/enumerate.hpp"
#include "pfact/factorisation.hpp"
#include "support.hpp"

using namespace pfact;
using test_support::load;
using test_support::to_graph;
using test_support::to_small;

namespace {

std::vector<int> ints(const std::vector<Colour>& c) { return std::vector<int>(c.begin(), c.end()); }

Graph petersen()
{
    return Graph(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                      {5, 7}, {7, 9}, {6, 9}, {6, 8}, {5, 8}});
}

std::set<std::vector<int>> enumerated(const Graph& g, int jobs = 1)
{
    std::set<std::vector<int>> out;
    for (auto& c : enumerate_factorisations(g, {jobs}).colourings)
        out.insert(ints(c.colours()));
    return out;
}

}  // namespace

TEST(Enumerate, PlatonicAndK6Counts)
{
    EXPECT_EQ(enumerate_factorisations(*load("tetrahedron").graph).colourings.size(), 1u);
    EXPECT_EQ(enumerate_factorisations(*load("cube").graph).colourings.size(), 4u);
    EXPECT_EQ(enumerate_factorisations(*load("dodecahedron").graph).colourings.size(), 10u);
    EXPECT_EQ(enumerate_factorisations(*load("octahedron").graph).colourings.size(), 2u);
    Graph k6 = complete_graph(6);
    auto list = enumerate_factorisations(k6);
    EXPECT_EQ(list.status, EnumerationStatus::complete);
    EXPECT_EQ(list.colourings.size(), oracle::colourings_up_to_permutation(to_small(k6), 5).size());
}

TEST(Enumerate, AgreesWithBruteForceOnSmallRegularGraphs)
{
    std::mt19937_64 rng(17);
    int checked = 0;
    for (auto [n, d] : std::vector<std::pair<int, int>>{{4, 3}, {6, 3}, {8, 3}, {6, 4}, {8, 4}, {8, 5}, {6, 5}}) {
        for (int t = 0; t < 4; ++t) {
            auto s = oracle::random_regular(n, d, rng);
            Graph g = to_graph(s);
            if (!is_connected(g))
                continue;
            EXPECT_EQ(enumerated(g), oracle::colourings_up_to_permutation(s, d)) << n << " " << d;
            ++checked;
        }
    }
    EXPECT_GT(checked, 15);
}

TEST(Enumerate, ParallelRunMatchesSequential)
{
    auto doc = load("dodecahedron");
    auto one = enumerate_factorisations(*doc.graph, {1}).colourings;
    auto four = enumerate_factorisations(*doc.graph, {4}).colourings;
    ASSERT_EQ(one.size(), four.size());
    for (std::size_t i = 0; i < one.size(); ++i)
        EXPECT_EQ(one[i].colours(), four[i].colours());
}

TEST(Enumerate, StatusMarkers)
{
    EXPECT_EQ(enumerate_factorisations(petersen()).status, EnumerationStatus::no_colouring);
    EXPECT_EQ(enumerate_factorisations(Graph(4, {{0, 1}, {1, 2}, {2, 3}})).status, EnumerationStatus::not_regular);
    EXPECT_EQ(enumerate_factorisations(complete_graph(5)).status, EnumerationStatus::odd_order);
    Graph two_k4(8, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {4, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7}});
    EXPECT_EQ(enumerate_factorisations(two_k4).status, EnumerationStatus::disconnected);
    EXPECT_TRUE(enumerate_factorisations(petersen()).colourings.empty());
    EXPECT_NE(EnumerationStatus::no_colouring, EnumerationStatus::not_run);
}

TEST(Enumerate, EmittedColouringsAreProperAndCanonical)
{
    std::mt19937_64 rng(8);
    auto doc = load("icosahedron");
    auto list = enumerate_factorisations(*doc.graph, {}, 300).colourings;
    ASSERT_EQ(list.size(), 300u);
    std::vector<Colour> perm{0, 1, 2, 3, 4, 5};
    for (auto& c : list) {
        EXPECT_TRUE(c.is_one_factorisation());
        EXPECT_TRUE(c.is_canonical());
        EXPECT_EQ(ints(c.colours()), oracle::first_occurrence(ints(c.colours())));
        std::shuffle(perm.begin() + 1, perm.end(), rng);
        EXPECT_EQ(c.permuted(perm).canonical(), c);
    }
}

TEST(PerfectPairs, ComponentCountsAgreeWithGenericRoutine)
{
    auto doc = load("quintic20");
    for (auto& [name, col] : doc.all_colourings()) {
        auto p = perfect_pairs(col);
        const Graph& g = col.graph();
        for (int i = 1; i <= 5; ++i)
            for (int j = i + 1; j <= 5; ++j) {
                std::vector<std::pair<Vertex, Vertex>> es;
                for (EdgeId e : col.colour_class(i))
                    es.emplace_back(g.edge(e).u, g.edge(e).v);
                for (EdgeId e : col.colour_class(j))
                    es.emplace_back(g.edge(e).u, g.edge(e).v);
                Graph two(g.order(), es);
                EXPECT_TRUE(two.is_regular(2));
                EXPECT_EQ(p.cycle_count(i, j), component_count(two));
                EXPECT_EQ(p.is_perfect(i, j), component_count(two) == 1);
            }
        EXPECT_EQ(p.k, oracle::perfect_pairs(to_small(g), ints(col.colours()), 5));
    }
}

TEST(PerfectPairs, KnownValues)
{
    Graph k6 = complete_graph(6);
    for (auto& c : enumerate_factorisations(k6).colourings)
        EXPECT_EQ(perfect_pairs(c).k, 10);
    EXPECT_EQ(perfect_pairs(*load("quintic20").colouring).k, 10);

    auto cube = load("cube");
    int zero = 0;
    for (auto& c : enumerate_factorisations(*cube.graph).colourings)
        zero += perfect_pairs(c).k == 0;
    EXPECT_EQ(zero, 1);
}

TEST(PerfectPairs, ImproperColouringIsRejected)
{
    auto g = std::make_shared<const Graph>(complete_graph(4));
    EdgeColouring bad(g, {1, 1, 2, 2, 3, 3}, 3);
    EXPECT_FALSE(bad.is_proper());
    try {
        perfect_pairs(bad);
        FAIL();
    } catch (const error& e) {
        EXPECT_STREQ(e.what(), "not a 1-factorisation");
    }
    EXPECT_THROW(EdgeColouring(g, {1, 2, 3}, 3), error);
    EXPECT_THROW(EdgeColouring(g, {1, 2, 3, 3, 2, 4}, 3), error);
}

TEST(Spectrum, KnownSpectra)
{
    EXPECT_EQ(spectrum(*load("cube").graph).spectrum(), (std::vector<int>{0, 2}));
    EXPECT_EQ(spectrum(*load("icosahedron").graph).spectrum(), (std::vector<int>{0, 2, 3, 4, 5, 6, 7, 8}));
    EXPECT_EQ(spectrum(*load("tetrahedron").graph).spectrum(), (std::vector<int>{3}));
}

TEST(Spectrum, WitnessesReverifyAndCountsSum)
{
    for (auto name : {"cube", "icosahedron", "dodecahedron", "octahedron"}) {
        auto doc = load(name);
        auto rep = spectrum(*doc.graph, {2});
        std::uint64_t sum = 0;
        for (auto& [k, n] : rep.counts) {
            sum += n;
            ASSERT_TRUE(rep.witnesses.count(k));
            EXPECT_EQ(perfect_pairs(rep.witnesses.at(k)).k, k) << name;
        }
        EXPECT_EQ(sum, rep.total);
        EXPECT_EQ(rep.total, enumerate_factorisations(*doc.graph).colourings.size());
    }
}

TEST(PerfectlyHamiltonian, KnownAnswers)
{
    auto k6 = is_perfectly_hamiltonian(complete_graph(6));
    ASSERT_TRUE(k6.perfectly_hamiltonian);
    EXPECT_TRUE(perfect_pairs(*k6.witness).all_perfect());
    EXPECT_FALSE(is_perfectly_hamiltonian(*load("icosahedron").graph).perfectly_hamiltonian);
    EXPECT_TRUE(is_perfectly_hamiltonian(*load("tetrahedron").graph).perfectly_hamiltonian);
    EXPECT_FALSE(is_perfectly_hamiltonian(*load("cube").graph).perfectly_hamiltonian);
}

TEST(PerfectlyHamiltonian, ShippedColouringsOfLargerOrders)
{
    for (auto name : {"order22", "order24", "order26", "order28", "order30", "order32", "order34", "order36"}) {
        auto doc = load(name);
        ASSERT_TRUE(doc.colouring) << name;
        EXPECT_TRUE(perfect_pairs(*doc.colouring).all_perfect()) << name;
        EXPECT_TRUE(doc.graph->is_regular(5));
    }
}

TEST(CubicColouring, SuccessBridgeAndClassTwo)
{
    auto k4 = three_edge_colour_cubic(complete_graph(4));
    ASSERT_TRUE(k4);
    EXPECT_TRUE(k4.colouring->is_one_factorisation());

    // two K4s with a subdivided edge each, joined through the subdivision vertices
    Graph bridged(10, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 4}, {2, 3}, {3, 4}, {4, 9},
                       {5, 6}, {5, 7}, {5, 8}, {6, 7}, {6, 9}, {7, 8}, {8, 9}});
    ASSERT_TRUE(bridged.is_regular(3));
    auto br = three_edge_colour_cubic(bridged);
    EXPECT_FALSE(br);
    EXPECT_EQ(br.failure, ColouringFailure::bridge);
    EXPECT_EQ(*br.bridge, bridged.edge_id(4, 9));

    auto pet = three_edge_colour_cubic(petersen());
    EXPECT_EQ(pet.failure, ColouringFailure::class_two);
    EXPECT_THROW(three_edge_colour_cubic(complete_graph(5)), error);
}

TEST(ExtendTwoFactor, HamiltonianAndFourEightFactors)
{
    auto doc = load("icosahedron");
    const Graph& g = *doc.graph;
    auto cycle = find_hamiltonian_cycle(g);
    ASSERT_TRUE(cycle);
    auto ext = extend_two_factor(g, TwoFactor{*cycle});
    ASSERT_TRUE(ext);
    auto p = perfect_pairs(*ext.colouring);
    EXPECT_TRUE(p.is_perfect(1, 2));

    auto shaped = two_factors(g, std::vector<int>{4, 8});
    ASSERT_FALSE(shaped.empty());
    auto ext2 = extend_two_factor(g, shaped.front());
    ASSERT_TRUE(ext2);
    EXPECT_FALSE(perfect_pairs(*ext2.colouring).is_perfect(1, 2));
    EXPECT_EQ(perfect_pairs(*ext2.colouring).cycle_count(1, 2), 2);
}

TEST(ExtendTwoFactor, BridgeAndParityFailures)
{
    auto doc = load("quintic20");
    const Graph& g = *doc.graph;
    auto r = is_charonian(g);
    ASSERT_EQ(r.verdict, Verdict::no);
    auto ext = extend_two_factor(g, *r.counterexample);
    EXPECT_FALSE(ext);
    EXPECT_EQ(ext.failure, ColouringFailure::bridge);

    Graph k6 = complete_graph(6);
    try {
        extend_two_factor(k6, TwoFactor{{0, 1, 2}, {3, 4, 5}});
        FAIL();
    } catch (const error& e) {
        EXPECT_NE(std::string(e.what()).find("parity"), std::string::npos);
    }
    EXPECT_THROW(extend_two_factor(k6, TwoFactor{{0, 1, 2, 3}}), error);
}

TEST(BoundedFactorisation, IcosahedronAndPreconditions)
{
    auto doc = load("icosahedron");
    auto b = bounded_factorisation(*doc.graph, *doc.rotation);
    EXPECT_LE(perfect_pairs(b.colouring).k, 9);
    EXPECT_TRUE(b.colouring.is_one_factorisation());
    EXPECT_EQ(b.short_cycle.size(), 4u);
    EXPECT_EQ(b.long_cycle.size(), 8u);

    auto conn4 = load("quintic26_conn4");
    ASSERT_TRUE(conn4.rotation);
    EXPECT_THROW(bounded_factorisation(*conn4.graph, *conn4.rotation), error);
}

TEST(BoundedFactorisation, DeterministicAcrossRuns)
{
    auto doc = load("icosahedron");
    auto a = bounded_factorisation(*doc.graph, *doc.rotation);
    auto b = bounded_factorisation(*doc.graph, *doc.rotation);
    EXPECT_EQ(a.colouring, b.colouring);
}

TEST(Peel, MatchingAndCycleFromTheTwentyVertexColouring)
{
    auto doc = load("quintic20");
    auto quartic = peel_matching(*doc.colouring, 5);
    EXPECT_TRUE(quartic.graph->is_regular(4));
    EXPECT_EQ(quartic.graph->order(), 20);
    EXPECT_TRUE(perfect_pairs(quartic.colouring).all_perfect());

    auto cubic = peel_cycle(*doc.colouring, 1, 2);
    EXPECT_TRUE(cubic.graph->is_regular(3));
    EXPECT_EQ(cubic.graph->order(), 20);
    EXPECT_TRUE(perfect_pairs(cubic.colouring).all_perfect());
}

TEST(Peel, TetrahedronAndErrors)
{
    auto doc = load("tetrahedron");
    auto square = peel_matching(enumerate_factorisations(*doc.graph).colourings.at(0), 3);
    EXPECT_TRUE(square.graph->is_regular(2));
    EXPECT_EQ(square.colouring.colour_count(), 2);
    EXPECT_TRUE(is_connected(*square.graph));

    auto cube = load("cube");
    for (auto& c : enumerate_factorisations(*cube.graph).colourings) {
        if (perfect_pairs(c).k != 0)
            continue;
        try {
            peel_cycle(c, 1, 2);
            FAIL();
        } catch (const error& e) {
            EXPECT_STREQ(e.what(), "pair not perfect");
        }
    }
}

TEST(Parity, SingleVertexCutsAndRandomCuts)
{
    for (auto& path : corpus_files(PFACT_CORPUS_DIR)) {
        auto doc = load_cel(path);
        if (doc.fragment)
            continue;  // fragments are not regular
        for (auto& [name, col] : doc.all_colourings()) {
            const Graph& g = col.graph();
            std::vector<Vertex> one{0};
            auto pr = parity_check(col, edge_cut(g, one));
            EXPECT_TRUE(pr.violations.empty());
            for (int i = 1; i <= col.colour_count(); ++i)
                EXPECT_EQ(pr.phi[i], 1);
            std::mt19937_64 rng(g.order());
            std::bernoulli_distribution coin(0.5);
            for (int t = 0; t < 200; ++t) {
                std::vector<Vertex> side;
                for (Vertex v = 0; v < g.order(); ++v)
                    if (coin(rng))
                        side.push_back(v);
                if (side.empty() || static_cast<int>(side.size()) == g.order())
                    continue;
                EXPECT_TRUE(parity_check(col, edge_cut(g, side)).violations.empty()) << path;
            }
        }
    }
}
