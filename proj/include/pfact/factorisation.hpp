#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfact/colouring.hpp"
#include "pfact/connectivity.hpp"
#include "pfact/cycles.hpp"
#include "pfact/enumerate.hpp"
#include "pfact/graph.hpp"

namespace pfact {

// ---------------------------------------------------------------------------
// cubic 3-edge-colouring

enum class ColouringFailure { none, bridge, class_two };

inline const char* to_string(ColouringFailure f)
{
    switch (f) {
    case ColouringFailure::none: return "none";
    case ColouringFailure::bridge: return "bridge";
    case ColouringFailure::class_two: return "class-2";
    }
    return "?";
}

struct CubicColouringResult {
    std::optional<EdgeColouring> colouring;
    ColouringFailure failure = ColouringFailure::none;
    std::optional<EdgeId> bridge;  ///< set when failure == bridge

    explicit operator bool() const { return colouring.has_value(); }
};

/// Proper 3-edge-colouring of a cubic graph (any number of components).
/// Colours are 1..3 shifted by `offset`.
inline CubicColouringResult three_edge_colour_cubic(const Graph& g, int offset = 0)
{
    if (!g.is_regular(3))
        throw error("three_edge_colour_cubic needs a cubic graph");
    CubicColouringResult r;
    if (auto b = bridges(g); !b.empty()) {
        r.failure = ColouringFailure::bridge;
        r.bridge = b.front();
        return r;
    }
    int count = 0;
    auto label = component_labels(g, &count);
    std::vector<Colour> colours(g.size(), 0);
    for (int c = 0; c < count; ++c) {
        std::vector<Vertex> members;
        for (Vertex v = 0; v < g.order(); ++v)
            if (label[v] == c)
                members.push_back(v);
        Subgraph sub = induced_subgraph(g, members);
        std::optional<std::vector<Colour>> found;
        for_each_factorisation(sub.graph, [&](const std::vector<Colour>& col) {
            found = col;
            return false;
        });
        if (!found) {
            r.failure = ColouringFailure::class_two;
            return r;
        }
        for (EdgeId e = 0; e < sub.graph.size(); ++e) {
            auto [u, v] = sub.graph.edge(e);
            colours[g.edge_id(sub.to_parent[u], sub.to_parent[v])] = static_cast<Colour>((*found)[e] + offset);
        }
    }
    r.colouring = EdgeColouring(std::make_shared<const Graph>(g), std::move(colours), 3 + offset);
    return r;
}

// ---------------------------------------------------------------------------
// 2-factor extension

/// Colours each cycle of f alternately 1/2 and the cubic remainder with 3,4,5.
inline CubicColouringResult extend_two_factor(const Graph& g, const TwoFactor& f)
{
    if (!g.is_regular(5))
        throw error("extend_two_factor needs a quintic graph");
    if (!is_two_factor_of(g, f))
        throw error("not a 2-factor of the graph");
    for (auto& c : f)
        if (c.size() % 2)
            throw error("parity: 2-factor has a cycle of odd length " + std::to_string(c.size()));
    std::vector<Colour> colours(g.size(), 0);
    std::vector<EdgeId> used;
    for (auto& c : f) {
        auto ids = cycle_edges(g, c);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            colours[ids[i]] = static_cast<Colour>(1 + i % 2);
            used.push_back(ids[i]);
        }
    }
    Graph rest = remove_edges(g, used);
    CubicColouringResult cubic = three_edge_colour_cubic(rest, 2);
    CubicColouringResult r;
    if (!cubic) {
        r.failure = cubic.failure;
        if (cubic.bridge) {
            auto [u, v] = rest.edge(*cubic.bridge);
            r.bridge = g.edge_id(u, v);
        }
        return r;
    }
    for (EdgeId e = 0; e < rest.size(); ++e) {
        auto [u, v] = rest.edge(e);
        colours[g.edge_id(u, v)] = cubic.colouring->colour(e);
    }
    r.colouring = EdgeColouring(std::make_shared<const Graph>(g), std::move(colours), 5);
    return r;
}

// ---------------------------------------------------------------------------
// bounded perfect-pair factorisation

struct BoundedFactorisation {
    EdgeColouring colouring;
    PerfectPairProfile profile;
    Diamond diamond;
    Cycle long_cycle;    ///< hamiltonian cycle of g minus the diamond's four vertices
    Cycle short_cycle;   ///< the diamond's outer 4-cycle
};

/// A quintic 5-connected plane graph with a diamond gets a 1-factorisation in
/// which colours 1 and 2 form a non-hamiltonian 2-factor (a 4-cycle around
/// the diamond plus a long cycle), hence at most nine perfect pairs.
/// Diamonds are tried in canonical order and, per diamond, long cycles in
/// search order, up to `cycles_per_diamond` each.
inline BoundedFactorisation bounded_factorisation(const Graph& g, const RotationSystem& rot,
                                                  std::size_t cycles_per_diamond = 1000)
{
    if (!g.is_regular(5))
        throw error("bounded_factorisation needs a quintic graph");
    validate_rotation(g, rot);
    if (!rot.planar)
        throw error("bounded_factorisation needs a planar embedding");
    if (vertex_connectivity(g) < 5)
        throw error("bounded_factorisation needs a 5-connected graph");
    auto ds = diamonds(g);
    if (ds.empty())
        throw error("no diamond");
    for (auto& dm : ds) {
        auto [x, y] = g.edge(dm.shared);
        Vertex v = dm.tip_first, w = dm.tip_second;
        Cycle square = canonical_cycle({v, x, w, y});
        std::vector<Vertex> removed{v, x, y, w};
        std::optional<BoundedFactorisation> found;
        std::size_t tried = 0;
        for_each_hamiltonian_cycle(g, {}, removed, [&](Cycle c) {
            TwoFactor f{c, square};
            auto ext = extend_two_factor(g, f);
            if (ext) {
                BoundedFactorisation b{*ext.colouring, perfect_pairs(*ext.colouring), dm, c, square};
                found = std::move(b);
                return false;
            }
            return ++tried < cycles_per_diamond;
        });
        if (found) {
            if (found->profile.k > 9 || found->profile.is_perfect(1, 2))
                throw error("internal error: bounded factorisation produced too many perfect pairs");
            return *found;
        }
    }
    throw error("no diamond admitted an extendable 2-factor");
}

// ---------------------------------------------------------------------------
// peeling

struct Peeled {
    std::shared_ptr<const Graph> graph;
    EdgeColouring colouring;
};

/// Deletes colour class i and closes the gap in the colour numbering.
inline Peeled peel_matching(const EdgeColouring& col, Colour i)
{
    require_one_factorisation(col);
    int d = col.colour_count();
    if (i < 1 || i > d)
        throw error("colour outside the palette");
    const Graph& g = col.graph();
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (EdgeId e = 0; e < g.size(); ++e)
        if (col.colour(e) != i)
            pairs.emplace_back(g.edge(e).u, g.edge(e).v);
    auto h = std::make_shared<const Graph>(g.order(), pairs);
    std::vector<Colour> colours(h->size());
    for (EdgeId e = 0; e < g.size(); ++e) {
        Colour c = col.colour(e);
        if (c == i)
            continue;
        colours[h->edge_id(g.edge(e).u, g.edge(e).v)] = static_cast<Colour>(c > i ? c - 1 : c);
    }
    return {h, EdgeColouring(h, std::move(colours), d - 1)};
}

/// Deletes the hamiltonian cycle E_i u E_j of a perfect pair.
inline Peeled peel_cycle(const EdgeColouring& col, Colour i, Colour j)
{
    require_one_factorisation(col);
    if (i == j)
        throw error("peel_cycle needs two distinct colours");
    if (!perfect_pairs(col).is_perfect(i, j))
        throw error("pair not perfect");
    if (i > j)
        std::swap(i, j);
    Peeled first = peel_matching(col, j);
    return peel_matching(first.colouring, i);
}

// ---------------------------------------------------------------------------
// cut parity

struct ParityReport {
    std::vector<int> phi;                               ///< phi[i] for i = 1..d (phi[0] unused)
    std::vector<std::pair<int, int>> violations;        ///< perfect pairs with phi_i + phi_j odd or zero
};

/// For every perfect pair (i, j) a hamiltonian cycle crosses the cut an even,
/// nonzero number of times; violations are reported, not thrown.
inline ParityReport parity_check(const EdgeColouring& col, const EdgeCut& cut)
{
    ParityReport r;
    int d = col.colour_count();
    r.phi.assign(d + 1, 0);
    for (EdgeId e : cut.edges)
        ++r.phi[col.colour(e)];
    auto profile = perfect_pairs(col);
    for (int i = 1; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j)
            if (profile.is_perfect(i, j)) {
                int s = r.phi[i] + r.phi[j];
                if (s == 0 || s % 2)
                    r.violations.emplace_back(i, j);
            }
    return r;
}

/// phi vector sorted ascending, i.e. the cut profile up to colour permutation.
inline std::vector<int> cut_profile(const ParityReport& r)
{
    std::vector<int> p(r.phi.begin() + 1, r.phi.end());
    std::sort(p.begin(), p.end());
    return p;
}

}  // namespace pfact
