#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pfact/colouring.hpp"
#include "pfact/connectivity.hpp"
#include "pfact/cycles.hpp"
#include "pfact/enumerate.hpp"
#include "pfact/factorisation.hpp"
#include "pfact/graph.hpp"

namespace pfact {

// ---------------------------------------------------------------------------
// charonian sweeps

enum class Verdict { yes, no, inconclusive };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct CharonianReport {
    Verdict verdict = Verdict::yes;
    std::size_t cycles_checked = 0;
    std::size_t factors_checked = 0;   ///< 2-factors other than hamiltonian cycles
    std::optional<TwoFactor> counterexample;
    std::optional<EdgeId> bridge;      ///< a bridge of g minus the counterexample, in g's ids
};

namespace detail {

/// Bridge of g - E(f), reported in g's edge ids.
inline std::optional<EdgeId> bridge_after_removal(const Graph& g, const TwoFactor& f)
{
    Graph rest = remove_edges(g, two_factor_edges(g, f));
    auto b = bridges(rest);
    if (b.empty())
        return std::nullopt;
    auto [u, v] = rest.edge(b.front());
    return g.edge_id(u, v);
}

inline void require_hamiltonian(const Graph& g)
{
    if (!find_hamiltonian_cycle(g))
        throw error("not hamiltonian");
}

}  // namespace detail

/// Every hamiltonian cycle leaves a bridgeless remainder.  `budget` caps the
/// number of cycles examined (0 = no cap); hitting it gives `inconclusive`.
inline CharonianReport is_charonian(const Graph& g, std::size_t budget = 0)
{
    detail::require_hamiltonian(g);
    CharonianReport r;
    for_each_hamiltonian_cycle(g, {}, {}, [&](Cycle c) {
        if (budget && r.cycles_checked >= budget) {
            r.verdict = Verdict::inconclusive;
            return false;
        }
        ++r.cycles_checked;
        TwoFactor f{std::move(c)};
        if (auto b = detail::bridge_after_removal(g, f)) {
            r.verdict = Verdict::no;
            r.counterexample = std::move(f);
            r.bridge = b;
            return false;
        }
        return true;
    });
    return r;
}

/// Charonian, and also every 2-factor made of a 4-cycle and an (n-4)-cycle
/// leaves a bridgeless remainder.  With `all_two_factors` every 2-factor is
/// swept instead of just that shape.
inline CharonianReport is_strongly_charonian(const Graph& g, std::size_t budget = 0, bool all_two_factors = false)
{
    CharonianReport r = is_charonian(g, budget);
    if (r.verdict != Verdict::yes)
        return r;
    std::optional<std::vector<int>> shape;
    if (!all_two_factors)
        shape = std::vector<int>{4, g.order() - 4};
    if (g.order() < 7 && !all_two_factors)
        return r;  // no room for two disjoint cycles of lengths 4 and n-4 >= 3
    for_each_two_factor(g, shape, [&](TwoFactor f) {
        if (f.size() == 1)
            return true;  // hamiltonian cycles were swept above
        if (budget && r.cycles_checked + r.factors_checked >= budget) {
            r.verdict = Verdict::inconclusive;
            return false;
        }
        ++r.factors_checked;
        if (auto b = detail::bridge_after_removal(g, f)) {
            r.verdict = Verdict::no;
            r.counterexample = std::move(f);
            r.bridge = b;
            return false;
        }
        return true;
    });
    return r;
}

// ---------------------------------------------------------------------------
// connectivity of perfectly hamiltonian graphs

/// Minimal edge cuts (both sides connected) of a connected plane graph with
/// at most `max_size` edges.  These are exactly the cycles of the dual, so
/// the search walks dual cycles of bounded length.  Each cut is reported once,
/// with `side` the shore not containing vertex 0.
inline std::vector<EdgeCut> planar_bonds(const Graph& g, const RotationSystem& rot, int max_size)
{
    validate_rotation(g, rot);
    if (!rot.planar)
        throw error("planar_bonds needs a planar embedding");
    if (!is_connected(g))
        throw error("planar_bonds needs a connected graph");
    auto walks = face_walks(g, rot);
    int f = static_cast<int>(walks.size());
    // dual edge per primal edge: the faces on its two sides
    std::vector<std::array<int, 2>> sides(g.size(), {-1, -1});
    for (int face = 0; face < f; ++face) {
        auto& w = walks[face];
        for (std::size_t i = 0; i < w.size(); ++i) {
            EdgeId e = g.edge_id(w[i], w[(i + 1) % w.size()]);
            sides[e][sides[e][0] < 0 ? 0 : 1] = face;
        }
    }
    std::vector<std::vector<std::pair<int, EdgeId>>> dual(f);
    for (EdgeId e = 0; e < g.size(); ++e) {
        auto [a, b] = sides[e];
        dual[a].emplace_back(b, e);
        if (a != b)
            dual[b].emplace_back(a, e);
    }
    std::set<std::vector<EdgeId>> found;
    std::vector<char> on_path(f, 0);
    std::vector<EdgeId> path;
    // cycles through `start` using only faces numbered above it
    std::function<void(int, int)> extend = [&](int start, int at) {
        for (auto [next, e] : dual[at]) {
            if (!path.empty() && e == path.back())
                continue;
            if (next == start) {
                std::vector<EdgeId> cut = path;
                cut.push_back(e);
                std::sort(cut.begin(), cut.end());
                if (std::adjacent_find(cut.begin(), cut.end()) == cut.end())
                    found.insert(cut);
                continue;
            }
            if (next < start || on_path[next] || static_cast<int>(path.size()) + 1 >= max_size)
                continue;
            on_path[next] = 1;
            path.push_back(e);
            extend(start, next);
            path.pop_back();
            on_path[next] = 0;
        }
    };
    for (int s = 0; s < f; ++s) {
        on_path[s] = 1;
        extend(s, s);
        on_path[s] = 0;
    }
    std::vector<EdgeCut> out;
    for (auto& cut : found) {
        Graph rest = remove_edges(g, cut);
        auto label = component_labels(rest);
        std::vector<Vertex> side;
        for (Vertex v = 0; v < g.order(); ++v)
            if (label[v] != label[0])
                side.push_back(v);
        out.push_back(edge_cut(g, side));
    }
    return out;
}

struct PhConnectivityReport {
    int connectivity = 0;
    std::size_t four_cuts = 0;
    std::size_t sampled_cuts = 0;
    std::size_t exact_cuts = 0;                          ///< bonds of size <= 7 found through the dual
    std::size_t seven_cuts = 0;
    std::map<int, std::set<std::vector<int>>> profiles;  ///< cut size -> sorted phi vectors seen
    std::vector<std::string> violations;

    bool passed() const { return violations.empty(); }
};

/// Checks the structure forced by an all-perfect 1-factorisation of a quintic
/// graph: 4-connectivity, no 4-vertex cut inducing a 4-cycle, and edge cuts
/// never of size 0..4 or 6, with 7-cuts always of profile (1,1,1,1,3).
/// Edge cuts are sampled from random vertex sets (seeded); with a plane
/// embedding every cut of at most 7 edges is also checked exactly.
inline PhConnectivityReport verify_ph_connectivity(const EdgeColouring& col, std::size_t samples = 1000,
                                                   std::uint64_t seed = 1, const RotationSystem* rot = nullptr)
{
    const Graph& g = col.graph();
    if (!g.is_regular(5))
        throw error("verify_ph_connectivity needs a quintic graph");
    if (!perfect_pairs(col).all_perfect())
        throw error("colouring is not perfect");
    PhConnectivityReport r;
    r.connectivity = vertex_connectivity(g);
    if (r.connectivity < 4)
        r.violations.push_back("connectivity " + std::to_string(r.connectivity) + " is below 4");
    if (r.connectivity == 4) {
        for (auto& cut : vertex_cuts_of_size(g, 4)) {
            ++r.four_cuts;
            Subgraph s = induced_subgraph(g, cut.vertices);
            if (s.graph.is_regular(2) && is_connected(s.graph)) {
                std::string vs;
                for (Vertex v : cut.vertices)
                    vs += (vs.empty() ? "" : " ") + std::to_string(v);
                r.violations.push_back("4-cut {" + vs + "} induces a 4-cycle");
            }
        }
    }

    auto check_cut = [&](const EdgeCut& cut) {
        ParityReport pr = parity_check(col, cut);
        auto profile = cut_profile(pr);
        int k = static_cast<int>(cut.edges.size());
        r.profiles[k].insert(profile);
        r.seven_cuts += k == 7;
        if (k <= 4 || k == 6)
            r.violations.push_back("edge cut of size " + std::to_string(k) + " exists");
        if (k == 7 && profile != std::vector<int>{1, 1, 1, 1, 3})
            r.violations.push_back("7-edge cut with a profile other than (1,1,1,1,3)");
        if (!pr.violations.empty())
            r.violations.push_back("cut parity violated on a perfect pair");
    };
    if (rot) {
        for (auto& cut : planar_bonds(g, *rot, 7)) {
            ++r.exact_cuts;
            check_cut(cut);
        }
    }

    std::mt19937_64 rng(seed);
    int n = g.order();
    for (std::size_t s = 0; s < samples; ++s) {
        // grow a connected set from a random vertex to a random size
        std::uniform_int_distribution<int> pick_size(1, n - 1), pick_vertex(0, n - 1);
        int size = pick_size(rng);
        std::vector<char> in(n, 0);
        std::vector<Vertex> side{pick_vertex(rng)};
        in[side[0]] = 1;
        std::vector<Vertex> frontier;
        while (static_cast<int>(side.size()) < size) {
            frontier.clear();
            for (Vertex v : side)
                for (Vertex w : g.neighbours(v))
                    if (!in[w])
                        frontier.push_back(w);
            if (frontier.empty())
                break;
            Vertex w = frontier[std::uniform_int_distribution<std::size_t>(0, frontier.size() - 1)(rng)];
            in[w] = 1;
            side.push_back(w);
        }
        ++r.sampled_cuts;
        check_cut(edge_cut(g, side));
    }
    return r;
}

// ---------------------------------------------------------------------------
// face statistics

struct EulerStats {
    int n = 0, m = 0;
    std::vector<int> faces;     ///< faces[k] = number of faces of length k
    int f3 = 0;
    bool f3_bound = false;      ///< f3 >= n + 8
    int s = 0;                  ///< 6 f3 - 2m
    bool s_bound = false;       ///< s >= n + 48
    std::size_t diamonds = 0;
    bool diamond_bound = false; ///< 2 * diamonds >= s
};

inline EulerStats euler_stats(const Graph& g, const RotationSystem& rot)
{
    if (!g.is_regular(5))
        throw error("euler_stats needs a quintic graph");
    if (!rot.planar)
        throw error("euler_stats needs a planar embedding");
    validate_rotation(g, rot);
    EulerStats e;
    e.n = g.order();
    e.m = g.size();
    e.faces = face_vector(g, rot);
    e.f3 = e.faces.size() > 3 ? e.faces[3] : 0;
    e.f3_bound = e.f3 >= e.n + 8;
    e.s = 6 * e.f3 - 2 * e.m;
    e.s_bound = e.s >= e.n + 48;
    e.diamonds = diamond_count(g);
    e.diamond_bound = 2 * static_cast<long long>(e.diamonds) >= e.s;
    return e;
}

// ---------------------------------------------------------------------------
// hamiltonian cycles through two edges

inline std::size_t hamiltonian_pair_census(const Graph& g, EdgeId e, EdgeId e_prime)
{
    if (e < 0 || e >= g.size() || e_prime < 0 || e_prime >= g.size())
        throw error("edge out of range");
    const Edge& a = g.edge(e);
    const Edge& b = g.edge(e_prime);
    if (e == e_prime || (!b.has(a.u) && !b.has(a.v)))
        throw error("edges are not adjacent");
    std::vector<EdgeId> req{e, e_prime};
    return count_hamiltonian_cycles(g, req);
}

// ---------------------------------------------------------------------------
// census over a graph stream

enum class CensusProperty { perfectly_hamiltonian, charonian };

struct CensusRow {
    int order = 0;
    std::size_t graphs = 0;
    std::size_t with_property = 0;
    std::size_t inconclusive = 0;
};

/// Counts graphs with the property, per order.  Non-hamiltonian graphs are
/// not charonian for census purposes.
inline std::vector<CensusRow> census(const std::vector<Graph>& graphs, CensusProperty property,
                                     const EnumerationOptions& opt = {}, std::size_t budget = 0)
{
    std::map<int, CensusRow> rows;
    for (auto& g : graphs) {
        CensusRow& row = rows[g.order()];
        row.order = g.order();
        ++row.graphs;
        if (property == CensusProperty::perfectly_hamiltonian) {
            auto r = is_perfectly_hamiltonian(g, opt);
            row.with_property += r.perfectly_hamiltonian;
            continue;
        }
        if (!find_hamiltonian_cycle(g))
            continue;
        auto r = is_charonian(g, budget);
        row.with_property += r.verdict == Verdict::yes;
        row.inconclusive += r.verdict == Verdict::inconclusive;
    }
    std::vector<CensusRow> out;
    for (auto& [n, row] : rows)
        out.push_back(row);
    return out;
}

}  // namespace pfact
