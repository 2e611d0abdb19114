#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pfact/colouring.hpp"
#include "pfact/connectivity.hpp"
#include "pfact/cycles.hpp"
#include "pfact/enumerate.hpp"
#include "pfact/factorisation.hpp"
#include "pfact/graph.hpp"
#include "pfact/isomorphism.hpp"

namespace pfact {

// ---------------------------------------------------------------------------
// marriage

struct MarriageResult {
    std::shared_ptr<const Graph> graph;
    EdgeColouring colouring;
    std::optional<RotationSystem> rotation;
    std::vector<Colour> permutation;   ///< applied to h's colours (index 0 unused)
    std::vector<Vertex> from_g;        ///< g-vertex -> result vertex (-1 for x)
    std::vector<Vertex> from_h;        ///< h-vertex -> result vertex (-1 for y)
    PerfectPairProfile predicted;      ///< pair perfect iff perfect in g and in permuted h
    PerfectPairProfile recounted;
};

namespace detail {

/// Colours around v in rotation order.
inline std::vector<Colour> colours_around(const EdgeColouring& col, const RotationSystem& rot, Vertex v)
{
    std::vector<Colour> out;
    for (EdgeId e : rot.order[v])
        out.push_back(col.colour(e));
    return out;
}

inline bool is_cyclic_shift(const std::vector<Colour>& a, const std::vector<Colour>& b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t s = 0; s < a.size(); ++s) {
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i)
            ok = a[i] == b[(i + s) % b.size()];
        if (ok)
            return true;
    }
    return false;
}

}  // namespace detail

/// Deletes x from g and y from h and joins their neighbours along equal colours.
///
/// The colours of h are permuted first: without embeddings by the identity,
/// with embeddings by the lexicographically least permutation that makes the
/// colour order around y the reverse of the order around x, so that the two
/// plane drawings can be glued.
inline MarriageResult marriage(const EdgeColouring& g_col, Vertex x, const EdgeColouring& h_col, Vertex y,
                               const RotationSystem* g_rot = nullptr, const RotationSystem* h_rot = nullptr)
{
    const Graph& g = g_col.graph();
    const Graph& h = h_col.graph();
    int d = g_col.colour_count();
    if (g.regularity() < 1 || g.regularity() != h.regularity())
        throw error("marriage needs two regular graphs of the same degree");
    if (h_col.colour_count() != d || g.regularity() != d)
        throw error("marriage needs d-edge-colourings of d-regular graphs");
    if (x < 0 || x >= g.order() || y < 0 || y >= h.order())
        throw error("marriage vertex out of range");
    if (g.degree(x) != h.degree(y))
        throw error("degree mismatch at the married vertices");
    require_one_factorisation(g_col);
    require_one_factorisation(h_col);
    bool embedded = g_rot && h_rot;

    std::vector<Colour> perm(d + 1);
    std::iota(perm.begin(), perm.end(), 0);
    bool found = !embedded;
    if (embedded) {
        auto around_x = detail::colours_around(g_col, *g_rot, x);
        auto around_y = detail::colours_around(h_col, *h_rot, y);
        std::vector<Colour> p(d);
        std::iota(p.begin(), p.end(), 1);
        do {
            std::vector<Colour> mapped;
            for (auto it = around_y.rbegin(); it != around_y.rend(); ++it)
                mapped.push_back(p[*it - 1]);
            if (detail::is_cyclic_shift(around_x, mapped)) {
                for (int c = 1; c <= d; ++c)
                    perm[c] = p[c - 1];
                found = true;
                break;
            }
        } while (std::next_permutation(p.begin(), p.end()));
    }
    if (!found)
        throw error("no colour permutation aligns the rotations at x and y");
    EdgeColouring h_perm = h_col.permuted(perm);

    MarriageResult r;
    r.permutation = perm;
    r.from_g.assign(g.order(), -1);
    r.from_h.assign(h.order(), -1);
    Vertex next = 0;
    for (Vertex v = 0; v < g.order(); ++v)
        if (v != x)
            r.from_g[v] = next++;
    for (Vertex v = 0; v < h.order(); ++v)
        if (v != y)
            r.from_h[v] = next++;

    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::vector<Colour> pair_colour;
    for (EdgeId e = 0; e < g.size(); ++e)
        if (!g.edge(e).has(x)) {
            pairs.emplace_back(r.from_g[g.edge(e).u], r.from_g[g.edge(e).v]);
            pair_colour.push_back(g_col.colour(e));
        }
    for (EdgeId e = 0; e < h.size(); ++e)
        if (!h.edge(e).has(y)) {
            pairs.emplace_back(r.from_h[h.edge(e).u], r.from_h[h.edge(e).v]);
            pair_colour.push_back(h_perm.colour(e));
        }
    // stub partner of each neighbour of x, by colour
    std::vector<std::pair<Vertex, Vertex>> joins;  // (g neighbour, h neighbour)
    for (int c = 1; c <= d; ++c) {
        EdgeId ex = g_col.edge_at(x, static_cast<Colour>(c));
        EdgeId ey = h_perm.edge_at(y, static_cast<Colour>(c));
        Vertex gx = g.edge(ex).other(x), hy = h.edge(ey).other(y);
        joins.emplace_back(gx, hy);
        pairs.emplace_back(r.from_g[gx], r.from_h[hy]);
        pair_colour.push_back(static_cast<Colour>(c));
    }
    auto graph = std::make_shared<const Graph>(next, pairs);
    std::vector<Colour> colours(graph->size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        colours[graph->edge_id(pairs[i].first, pairs[i].second)] = pair_colour[i];
    r.graph = graph;
    r.colouring = EdgeColouring(graph, std::move(colours), d);

    if (embedded) {
        std::map<Vertex, Vertex> partner_of_g, partner_of_h;
        for (auto [gx, hy] : joins) {
            partner_of_g[gx] = hy;
            partner_of_h[hy] = gx;
        }
        std::vector<std::vector<Vertex>> nbrs(next);
        auto gn = rotation_neighbours(g, *g_rot);
        auto hn = rotation_neighbours(h, *h_rot);
        for (Vertex v = 0; v < g.order(); ++v) {
            if (v == x)
                continue;
            for (Vertex w : gn[v])
                nbrs[r.from_g[v]].push_back(w == x ? r.from_h[partner_of_g.at(v)] : r.from_g[w]);
        }
        for (Vertex v = 0; v < h.order(); ++v) {
            if (v == y)
                continue;
            for (Vertex w : hn[v])
                nbrs[r.from_h[v]].push_back(w == y ? r.from_g[partner_of_h.at(v)] : r.from_h[w]);
        }
        r.rotation = rotation_from_neighbours(*graph, nbrs, g_rot->planar && h_rot->planar);
        validate_rotation(*graph, *r.rotation);
    }

    auto pg = perfect_pairs(g_col), ph = perfect_pairs(h_perm);
    r.predicted.d = d;
    r.predicted.n = next;
    for (std::size_t i = 0; i < pg.perfect.size(); ++i) {
        // the cycles through x and through y merge into one
        int cycles = pg.cycles[i] + ph.cycles[i] - 1;
        r.predicted.cycles.push_back(cycles);
        r.predicted.perfect.push_back(cycles == 1);
        r.predicted.k += cycles == 1;
    }
    r.recounted = perfect_pairs(r.colouring);
    return r;
}

// ---------------------------------------------------------------------------
// divorce

/// A near-quintic plane piece with four distinguished boundary vertices.
struct Fragment {
    EdgeColouring colouring;                 ///< carries the host graph
    Vertex a = -1, b = -1, c = -1, d = -1;
    std::optional<RotationSystem> rotation;

    const Graph& graph() const { return colouring.graph(); }
};

struct ConditionResult {
    std::string label;                        ///< "i" .. "x"
    Colour first = 0, second = 0;             ///< the colour pair
    bool holds = false;
    std::vector<std::vector<Vertex>> witness; ///< path(s) when it holds
    std::string certificate;                  ///< what the exhaustive search examined
};

struct SuitabilityReport {
    std::vector<ConditionResult> conditions;  ///< in order (i) .. (x)
    bool embedding_verified = false;

    bool suitable() const
    {
        return std::all_of(conditions.begin(), conditions.end(), [](auto& c) { return c.holds; });
    }
    const ConditionResult* first_failure() const
    {
        for (auto& c : conditions)
            if (!c.holds)
                return &c;
        return nullptr;
    }
};

/// Throws naming the violated requirement; returns whether the embedding was checked.
inline bool check_fragment(const Fragment& f)
{
    const Graph& g = f.graph();
    const EdgeColouring& col = f.colouring;
    std::array<Vertex, 4> abcd{f.a, f.b, f.c, f.d};
    for (Vertex v : abcd)
        if (v < 0 || v >= g.order())
            throw error("fragment: distinguished vertex out of range");
    if (std::set<Vertex>(abcd.begin(), abcd.end()).size() != 4)
        throw error("fragment: a, b, c, d must be distinct");
    if (g.degree(f.a) != 3 || g.degree(f.b) != 3 || g.degree(f.c) != 3)
        throw error("fragment: a, b and c must have degree 3");
    if (g.degree(f.d) != 2)
        throw error("fragment: d must have degree 2");
    for (Vertex v = 0; v < g.order(); ++v)
        if (std::find(abcd.begin(), abcd.end(), v) == abcd.end() && g.degree(v) != 5)
            throw error("fragment: vertex " + std::to_string(v) + " is not quintic");
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            bool is_bc = (abcd[i] == f.b && abcd[j] == f.c);
            if (g.adjacent(abcd[i], abcd[j]) != is_bc)
                throw error("fragment: bc must be the only edge among a, b, c, d");
        }
    if (col.colour_count() != 5 || !col.is_proper())
        throw error("fragment: colouring must be a proper 5-edge-colouring");
    if (col.colour(g.edge_id(f.b, f.c)) != 1)
        throw error("fragment: edge bc must have colour 1");
    if (!f.rotation)
        return false;
    validate_rotation(g, *f.rotation);
    for (auto& walk : face_walks(g, *f.rotation)) {
        std::vector<Vertex> order;
        for (Vertex v : walk)
            if (std::find(abcd.begin(), abcd.end(), v) != abcd.end())
                order.push_back(v);
        if (order.size() != 4)
            continue;
        std::vector<Colour> seq, want{0, 1, 2, 3}, rev{3, 2, 1, 0};
        for (Vertex v : order)
            seq.push_back(static_cast<Colour>(std::find(abcd.begin(), abcd.end(), v) - abcd.begin()));
        if (detail::is_cyclic_shift(want, seq) || detail::is_cyclic_shift(rev, seq))
            return true;
    }
    throw error("fragment: a, b, c, d do not lie on a common face in that order");
}

namespace detail {

/// All simple s-t paths using only colours p and q, avoiding `removed`.
/// The bichromatic subgraph has maximum degree 2, so there are at most two.
inline std::vector<std::vector<Vertex>> bichromatic_paths(const EdgeColouring& col, Colour p, Colour q,
                                                          const std::vector<char>& removed, Vertex s, Vertex t)
{
    const Graph& g = col.graph();
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> path{s};
    std::vector<char> on(g.order(), 0);
    on[s] = 1;
    auto rec = [&](auto& self, Vertex v) -> void {
        if (v == t) {
            out.push_back(path);
            return;
        }
        auto nb = g.neighbours(v);
        auto inc = g.incident(v);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            Vertex w = nb[i];
            Colour c = col.colour(inc[i]);
            if ((c != p && c != q) || removed[w] || on[w])
                continue;
            on[w] = 1;
            path.push_back(w);
            self(self, w);
            path.pop_back();
            on[w] = 0;
        }
    };
    if (!removed[s] && !removed[t])
        rec(rec, s);
    return out;
}

inline bool path_uses_edge(const std::vector<Vertex>& path, Vertex u, Vertex v)
{
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if ((path[i] == u && path[i + 1] == v) || (path[i] == v && path[i + 1] == u))
            return true;
    return false;
}

}  // namespace detail

/// Checks the ten bichromatic path conditions that make a fragment suitable.
inline SuitabilityReport suitability_check(const Fragment& f)
{
    SuitabilityReport rep;
    rep.embedding_verified = check_fragment(f);
    const Graph& g = f.graph();
    const EdgeColouring& col = f.colouring;
    Vertex a = f.a, b = f.b, c = f.c, d = f.d;

    auto single = [&](std::string label, Colour p, Colour q, Vertex s, Vertex t, std::vector<Vertex> removed,
                      bool needs_bc) {
        ConditionResult r;
        r.label = label;
        r.first = p;
        r.second = q;
        std::vector<char> gone(g.order(), 0);
        for (Vertex v : removed)
            gone[v] = 1;
        std::size_t remaining = g.order() - removed.size();
        auto paths = detail::bichromatic_paths(col, p, q, gone, s, t);
        for (auto& path : paths)
            if (path.size() == remaining && (!needs_bc || detail::path_uses_edge(path, b, c))) {
                r.holds = true;
                r.witness = {path};
                break;
            }
        r.certificate = std::to_string(paths.size()) + " bichromatic path(s) between the end vertices examined";
        return r;
    };
    auto split = [&](std::string label, Colour p, Colour q, Vertex s1, Vertex t1, Vertex s2, Vertex t2) {
        ConditionResult r;
        r.label = label;
        r.first = p;
        r.second = q;
        std::vector<char> none(g.order(), 0);
        auto first = detail::bichromatic_paths(col, p, q, none, s1, t1);
        std::size_t examined = 0;
        for (auto& p1 : first) {
            std::vector<char> gone(g.order(), 0);
            for (Vertex v : p1)
                gone[v] = 1;
            for (auto& p2 : detail::bichromatic_paths(col, p, q, gone, s2, t2)) {
                ++examined;
                if (p1.size() + p2.size() == static_cast<std::size_t>(g.order()) && !r.holds) {
                    r.holds = true;
                    r.witness = {p1, p2};
                }
            }
        }
        r.certificate = std::to_string(first.size()) + " first path(s), " + std::to_string(examined) +
                        " disjoint second path(s) examined";
        return r;
    };

    rep.conditions.push_back(single("i", 1, 2, c, d, {}, true));
    rep.conditions.push_back(single("ii", 1, 3, b, d, {}, true));
    rep.conditions.push_back(single("iii", 1, 4, a, c, {d}, true));
    rep.conditions.push_back(single("iv", 1, 5, a, b, {d}, true));
    rep.conditions.push_back(single("v", 2, 3, b, c, {}, false));
    rep.conditions.push_back(single("vi", 2, 4, a, d, {c}, false));
    rep.conditions.push_back(split("vii", 2, 5, a, d, b, c));
    rep.conditions.push_back(split("viii", 3, 4, a, b, c, d));
    rep.conditions.push_back(single("ix", 3, 5, a, d, {b}, false));
    rep.conditions.push_back(single("x", 4, 5, b, c, {a, d}, false));
    return rep;
}

struct DivorceResult {
    std::shared_ptr<const Graph> graph;
    EdgeColouring colouring;
    PerfectPairProfile profile;
    std::vector<Vertex> copy_of;     ///< fragment vertex -> vertex of its image in the copy
    std::vector<Vertex> involution;  ///< automorphism swapping the two halves
    SuitabilityReport report;
};

/// Glues a suitable fragment to a recoloured copy of itself:
/// a = d', d = a', b = c', c = b', the copy recoloured by (1)(2 4)(3 5).
inline DivorceResult divorce(const Fragment& f)
{
    DivorceResult r;
    r.report = suitability_check(f);
    if (auto bad = r.report.first_failure())
        throw error("fragment is not suitable: condition (" + bad->label + ") fails");
    const Graph& g = f.graph();
    int n = g.order();
    static constexpr std::array<Colour, 6> pi{0, 1, 4, 5, 2, 3};

    r.copy_of.assign(n, -1);
    Vertex next = n;
    for (Vertex v = 0; v < n; ++v) {
        if (v == f.a)
            r.copy_of[v] = f.d;
        else if (v == f.d)
            r.copy_of[v] = f.a;
        else if (v == f.b)
            r.copy_of[v] = f.c;
        else if (v == f.c)
            r.copy_of[v] = f.b;
        else
            r.copy_of[v] = next++;
    }
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::vector<Colour> pc;
    for (EdgeId e = 0; e < g.size(); ++e) {
        auto [u, v] = g.edge(e);
        pairs.emplace_back(u, v);
        pc.push_back(f.colouring.colour(e));
    }
    EdgeId bc = g.edge_id(f.b, f.c);
    for (EdgeId e = 0; e < g.size(); ++e) {
        if (e == bc)
            continue;  // c'b' coincides with bc
        auto [u, v] = g.edge(e);
        pairs.emplace_back(r.copy_of[u], r.copy_of[v]);
        pc.push_back(pi[f.colouring.colour(e)]);
    }
    auto graph = std::make_shared<const Graph>(next, pairs);
    std::vector<Colour> colours(graph->size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        colours[graph->edge_id(pairs[i].first, pairs[i].second)] = pc[i];
    r.graph = graph;
    r.colouring = EdgeColouring(graph, std::move(colours), 5);
    if (!r.colouring.is_one_factorisation())
        throw error("internal error: divorce produced an improper colouring");
    r.profile = perfect_pairs(r.colouring);

    r.involution.assign(next, -1);
    for (Vertex v = 0; v < n; ++v) {
        r.involution[v] = r.copy_of[v];
        r.involution[r.copy_of[v]] = v;
    }
    if (!is_isomorphism(*graph, *graph, r.involution))
        throw error("internal error: half swap is not an automorphism");
    return r;
}

// ---------------------------------------------------------------------------
// triangle gluing

struct GlueResult {
    std::shared_ptr<const Graph> graph;
    EdgeColouring colouring;
    PerfectPairProfile profile;
    EdgeColouring source;                 ///< the colouring of g that was brought into the pattern
    std::array<Vertex, 3> v{};            ///< triangle vertices as v1, v2, v3
    std::array<Vertex, 9> x{};            ///< outside neighbours x1..x9 in g
};

namespace detail {

inline std::optional<GlueResult> glue_with(const EdgeColouring& col, const Triangle& tri)
{
    const Graph& g = col.graph();
    std::array<Vertex, 3> order{tri[0], tri[1], tri[2]};
    do {
        Vertex v1 = order[0], v2 = order[1], v3 = order[2];
        Colour c12 = col.colour(g.edge_id(v1, v2)), c23 = col.colour(g.edge_id(v2, v3)),
               c31 = col.colour(g.edge_id(v3, v1));
        std::vector<Colour> rest;
        for (Colour c = 1; c <= 5; ++c)
            if (c != c12 && c != c23 && c != c31)
                rest.push_back(c);
        for (int flip = 0; flip < 2; ++flip) {
            std::vector<Colour> perm(6, 0);
            perm[c12] = 1, perm[c23] = 2, perm[c31] = 3;
            perm[rest[flip]] = 4, perm[rest[1 - flip]] = 5;
            EdgeColouring p = col.permuted(perm);
            auto nb = [&](Vertex v, Colour c) { return g.edge(p.edge_at(v, c)).other(v); };
            std::array<Vertex, 9> x{nb(v1, 2), nb(v1, 4), nb(v1, 5), nb(v2, 3), nb(v2, 4),
                                    nb(v2, 5), nb(v3, 1), nb(v3, 4), nb(v3, 5)};
            static constexpr std::array<Colour, 9> want{2, 4, 5, 3, 4, 5, 1, 4, 5};
            bool ok = true;
            for (int i = 0; i < 9 && ok; ++i)
                ok = std::find(order.begin(), order.end(), x[i]) == order.end();
            if (!ok)
                continue;
            // pattern x1y1, x2y8, x3y6, x4y4, x5y2, x6y9, x7y7, x8y5, x9y3
            static constexpr std::array<int, 9> partner{0, 7, 5, 3, 1, 8, 6, 4, 2};
            int n = g.order();
            std::vector<Vertex> idx(n, -1);
            Vertex next = 0;
            for (Vertex v = 0; v < n; ++v)
                if (v != v1 && v != v2 && v != v3)
                    idx[v] = next++;
            int half = next;
            std::vector<std::pair<Vertex, Vertex>> pairs;
            std::vector<Colour> pc;
            for (int copy = 0; copy < 2; ++copy)
                for (EdgeId e = 0; e < g.size(); ++e) {
                    auto [u, w] = g.edge(e);
                    if (idx[u] < 0 || idx[w] < 0)
                        continue;
                    pairs.emplace_back(idx[u] + copy * half, idx[w] + copy * half);
                    pc.push_back(p.colour(e));
                }
            for (int i = 0; i < 9; ++i) {
                pairs.emplace_back(idx[x[i]], idx[x[partner[i]]] + half);
                pc.push_back(want[i]);
            }
            auto graph = std::make_shared<const Graph>(2 * half, pairs);
            std::vector<Colour> colours(graph->size());
            for (std::size_t i = 0; i < pairs.size(); ++i)
                colours[graph->edge_id(pairs[i].first, pairs[i].second)] = pc[i];
            GlueResult r{graph, EdgeColouring(graph, std::move(colours), 5), {}, p, {v1, v2, v3}, x};
            if (!r.colouring.is_proper())
                continue;
            r.profile = perfect_pairs(r.colouring);
            return r;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return std::nullopt;
}

}  // namespace detail

/// Joins two copies of g - triangle by nine edges in the fixed pattern.
///
/// The given colouring is tried first under every colour permutation; if it
/// is not perfect, other colourings from the enumeration (up to `budget`)
/// are tried.  The output profile is recounted.
inline GlueResult triangle_glue(const EdgeColouring& col, const Triangle& tri, std::size_t budget = 100000)
{
    const Graph& g = col.graph();
    if (!g.is_regular(5))
        throw error("triangle_glue needs a quintic graph");
    require_one_factorisation(col);
    Triangle t = tri;
    std::sort(t.begin(), t.end());
    if (!g.adjacent(t[0], t[1]) || !g.adjacent(t[1], t[2]) || !g.adjacent(t[0], t[2]))
        throw error("not a triangle");
    std::set<Vertex> outside;
    for (Vertex v : t)
        for (Vertex w : g.neighbours(v))
            if (w != t[0] && w != t[1] && w != t[2])
                outside.insert(w);
    if (outside.size() != 9)
        throw error("the triangle's neighbourhood is not 9 distinct vertices");
    if (perfect_pairs(col).all_perfect())
        if (auto r = detail::glue_with(col, t))
            return *r;
    std::optional<GlueResult> found;
    std::size_t tried = 0;
    for_each_factorisation(g, [&](const std::vector<Colour>& c) {
        EdgeColouring cand(col.graph_ptr(), c, 5);
        if (perfect_pairs(cand).all_perfect())
            found = detail::glue_with(cand, t);
        return !found && ++tried < budget;
    });
    if (!found)
        throw error("pattern unrealisable");
    return *found;
}

// ---------------------------------------------------------------------------
// charonian chains

struct CharonianChain {
    std::shared_ptr<const Graph> graph;
    int copies = 0;
    int seed_order = 0;
    EdgeId e = -1, e_prime = -1;       ///< in the seed
    Vertex x = -1, y = -1;             ///< e = xy, with e' at x or y
    std::vector<EdgeId> connecting;    ///< y_i x_{i+1}, in copy order
    std::vector<EdgeId> e_prime_copies;

    /// Vertex v of copy i.
    Vertex vertex(int copy, Vertex v) const { return copy * seed_order + v; }
};

/// k copies of g - e with y_i joined to x_{i+1 mod k}.
inline CharonianChain charonian_chain(const Graph& g, EdgeId e, EdgeId e_prime, int k)
{
    if (k < 1)
        throw error("chain length must be positive");
    if (e < 0 || e >= g.size() || e_prime < 0 || e_prime >= g.size() || e == e_prime)
        throw error("chain edges out of range");
    const Edge& ed = g.edge(e);
    const Edge& ep = g.edge(e_prime);
    if (!ep.has(ed.u) && !ep.has(ed.v))
        throw error("e' is not adjacent to e");
    CharonianChain c;
    c.copies = k;
    c.seed_order = g.order();
    c.e = e;
    c.e_prime = e_prime;
    c.x = ed.u;
    c.y = ed.v;
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (int i = 0; i < k; ++i)
        for (EdgeId f = 0; f < g.size(); ++f)
            if (f != e)
                pairs.emplace_back(c.vertex(i, g.edge(f).u), c.vertex(i, g.edge(f).v));
    std::vector<std::pair<Vertex, Vertex>> links;
    for (int i = 0; i < k; ++i)
        links.emplace_back(c.vertex(i, c.y), c.vertex((i + 1) % k, c.x));
    pairs.insert(pairs.end(), links.begin(), links.end());
    c.graph = std::make_shared<const Graph>(k * g.order(), pairs);
    for (auto [u, v] : links)
        c.connecting.push_back(c.graph->edge_id(u, v));
    for (int i = 0; i < k; ++i)
        c.e_prime_copies.push_back(c.graph->edge_id(c.vertex(i, ep.u), c.vertex(i, ep.v)));
    return c;
}

/// Builds the colourings of a chain from one hamiltonian cycle through e and e'
/// per copy: the chained cycle alternates colours 1/2 with connecting edges 1,
/// and the cubic remainder takes 3, 4, 5.  Visits at most `limit` tuples
/// (0 = all, h^k of them); visit(colouring) returns false to stop.
template <class Visit>
std::size_t chain_colourings(const CharonianChain& chain, const Graph& seed, Visit&& visit, std::size_t limit = 0)
{
    std::vector<EdgeId> req{chain.e, chain.e_prime};
    auto cycles = hamiltonian_cycles(seed, req);
    if (cycles.empty())
        throw error("no hamiltonian cycle through e and e'");
    const Graph& G = *chain.graph;
    int k = chain.copies;
    std::vector<std::size_t> pick(k, 0);
    std::size_t produced = 0;
    while (true) {
        // chain the paths x_i -> y_i through the connecting edges
        Cycle big;
        for (int i = 0; i < k; ++i) {
            const Cycle& c = cycles[pick[i]];
            // rotate so the cycle reads x ... y (dropping edge yx)
            std::size_t at = std::find(c.begin(), c.end(), chain.x) - c.begin();
            std::size_t len = c.size();
            bool forward = c[(at + len - 1) % len] == chain.y;
            for (std::size_t s = 0; s < len; ++s) {
                Vertex v = forward ? c[(at + s) % len] : c[(at + len - s) % len];
                big.push_back(chain.vertex(i, v));
            }
        }
        // big is hamiltonian in G; its edges alternate starting after a connecting edge
        std::vector<Colour> colours(G.size(), 0);
        std::vector<EdgeId> used;
        for (std::size_t s = 0; s < big.size(); ++s) {
            EdgeId f = G.edge_id(big[s], big[(s + 1) % big.size()]);
            used.push_back(f);
            // edge s joins big[s] to big[s+1]; the connecting edge closes each copy, so
            // position n-1, 2n-1, ... are connecting edges and get colour 1
            int n = chain.seed_order;
            colours[f] = static_cast<Colour>(((static_cast<int>(s) - (n - 1)) % 2 == 0) ? 1 : 2);
        }
        Graph rest = remove_edges(G, used);
        auto cubic = three_edge_colour_cubic(rest, 2);
        if (!cubic)
            throw error(std::string("chain remainder not 3-edge-colourable: ") + to_string(cubic.failure));
        for (EdgeId f = 0; f < rest.size(); ++f)
            colours[G.edge_id(rest.edge(f).u, rest.edge(f).v)] = cubic.colouring->colour(f);
        ++produced;
        if (!visit(EdgeColouring(chain.graph, std::move(colours), 5)))
            break;
        if (limit && produced >= limit)
            break;
        int i = k - 1;
        while (i >= 0 && ++pick[i] == cycles.size())
            pick[i--] = 0;
        if (i < 0)
            break;
    }
    return produced;
}

// ---------------------------------------------------------------------------
// vertex substitution

/// Replaces each vertex of the cubic graph h by a copy of g - gv, with one
/// link per h-edge outside f1 u f2 and two links per edge inside it.
///
/// `slots` optionally maps link slot i (in h's adjacency order, doubled
/// edges contributing two consecutive slots) to a deficient vertex of the
/// copy; by default slot i goes to the i-th deficient vertex in id order.
inline std::shared_ptr<const Graph> vertex_substitution(const Graph& h, const std::vector<EdgeId>& f1,
                                                        const std::vector<EdgeId>& f2, const Graph& g, Vertex gv,
                                                        const std::vector<std::vector<int>>& slots = {})
{
    if (!h.is_regular(3) || !is_connected(h))
        throw error("vertex_substitution needs a connected cubic host");
    if (!g.is_regular(5))
        throw error("vertex_substitution needs a quintic graph to substitute");
    if (gv < 0 || gv >= g.order())
        throw error("substituted vertex out of range");
    std::vector<int> mult(h.size(), 1);
    auto mark = [&](const std::vector<EdgeId>& f) {
        std::vector<int> cover(h.order(), 0);
        for (EdgeId e : f) {
            if (e < 0 || e >= h.size())
                throw error("matching edge out of range");
            ++cover[h.edge(e).u];
            ++cover[h.edge(e).v];
            if (mult[e] == 2)
                throw error("f1 and f2 are not disjoint");
            mult[e] = 2;
        }
        if (std::any_of(cover.begin(), cover.end(), [](int c) { return c != 1; }))
            throw error("f1 and f2 must be perfect matchings");
    };
    mark(f1);
    mark(f2);

    Subgraph piece = remove_vertices(g, std::vector<Vertex>{gv});
    std::vector<Vertex> deficient;
    for (Vertex v = 0; v < piece.graph.order(); ++v)
        if (piece.graph.degree(v) == 4)
            deficient.push_back(v);
    if (deficient.size() != 5)
        throw error("g - gv must have exactly five vertices of degree 4");
    int p = piece.graph.order();

    // slot list per h-vertex: (neighbour, link number on that edge)
    std::vector<std::vector<std::pair<Vertex, int>>> slot_list(h.order());
    for (Vertex u = 0; u < h.order(); ++u) {
        auto nb = h.neighbours(u);
        auto inc = h.incident(u);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (int t = 0; t < mult[inc[i]]; ++t)
                slot_list[u].emplace_back(nb[i], t);
        if (slot_list[u].size() != 5)
            throw error("degree bookkeeping failed at host vertex " + std::to_string(u));
    }
    auto slot_vertex = [&](Vertex u, Vertex w, int t) {
        auto& sl = slot_list[u];
        int i = static_cast<int>(std::find(sl.begin(), sl.end(), std::make_pair(w, t)) - sl.begin());
        int target = slots.empty() ? i : slots.at(u).at(i);
        return u * p + deficient.at(target);
    };

    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex u = 0; u < h.order(); ++u)
        for (auto& e : piece.graph.edges())
            pairs.emplace_back(u * p + e.u, u * p + e.v);
    for (EdgeId e = 0; e < h.size(); ++e) {
        auto [u, w] = h.edge(e);
        for (int t = 0; t < mult[e]; ++t)
            pairs.emplace_back(slot_vertex(u, w, t), slot_vertex(w, u, t));
    }
    auto out = std::make_shared<const Graph>(h.order() * p, pairs);
    if (!out->is_regular(5))
        throw error("degree bookkeeping failed: substitution result is not quintic");
    return out;
}

// ---------------------------------------------------------------------------
// block chains

enum class Block { A, B };

namespace detail {

struct block_descriptor {
    std::vector<std::array<int, 3>> edges;          ///< u, v, colour
    std::array<std::array<int, 2>, 5> left, right;  ///< (vertex, colour), top to bottom
};

/// The two 20-vertex blocks with the colourings of their single-block closures.
inline const block_descriptor& block_data(Block b)
{
    static const block_descriptor a{
        {{{0, 1, 3}, {0, 4, 2}, {0, 5, 4}, {0, 6, 5}, {1, 2, 4}, {1, 6, 1}, {1, 7, 5}, {2, 7, 2}, {2, 8, 5},
          {3, 4, 1}, {3, 9, 3}, {3, 10, 5}, {4, 10, 3}, {4, 11, 4}, {5, 6, 2}, {5, 11, 3}, {5, 12, 5},
          {5, 13, 1}, {6, 7, 4}, {6, 13, 3}, {7, 8, 3}, {7, 14, 1}, {8, 14, 2}, {8, 15, 1}, {9, 15, 4},
          {9, 16, 1}, {9, 17, 2}, {10, 11, 2}, {10, 17, 4}, {10, 18, 1}, {11, 12, 1}, {11, 18, 5},
          {12, 13, 2}, {12, 18, 4}, {12, 19, 3}, {13, 14, 4}, {13, 19, 5}, {14, 15, 5}, {14, 16, 3},
          {15, 16, 2}, {16, 17, 5}, {16, 19, 4}, {17, 18, 3}, {17, 19, 1}, {18, 19, 2}}},
        {{{2, 1}, {8, 4}, {15, 3}, {9, 5}, {3, 2}}},
        {{{2, 3}, {1, 2}, {0, 1}, {4, 5}, {3, 4}}},
    };
    static const block_descriptor bb{
        {{{0, 1, 1}, {0, 2, 2}, {0, 3, 3}, {0, 4, 4}, {1, 5, 3}, {1, 6, 4}, {1, 7, 5}, {2, 3, 5}, {2, 7, 1},
          {2, 8, 3}, {2, 9, 4}, {3, 4, 2}, {3, 9, 1}, {3, 10, 4}, {4, 10, 1}, {4, 11, 5}, {5, 6, 1},
          {5, 12, 5}, {6, 7, 2}, {6, 12, 3}, {6, 13, 5}, {7, 8, 4}, {7, 14, 3}, {8, 9, 2}, {8, 14, 5},
          {8, 15, 1}, {9, 15, 3}, {9, 16, 5}, {10, 11, 2}, {10, 16, 3}, {10, 17, 5}, {11, 17, 4},
          {12, 13, 2}, {12, 18, 1}, {13, 14, 1}, {13, 18, 4}, {13, 19, 3}, {14, 15, 2}, {14, 19, 4},
          {15, 16, 4}, {15, 19, 5}, {16, 17, 2}, {16, 19, 1}, {17, 18, 3}, {18, 19, 2}}},
        {{{11, 3}, {17, 1}, {18, 5}, {12, 4}, {5, 2}}},
        {{{11, 1}, {4, 3}, {0, 5}, {1, 2}, {5, 4}}},
    };
    return b == Block::A ? a : bb;
}

}  // namespace detail

inline std::vector<Block> parse_block_sequence(const std::string& s)
{
    std::vector<Block> out;
    for (char ch : s) {
        if (ch == 'A' || ch == 'a')
            out.push_back(Block::A);
        else if (ch == 'B' || ch == 'b')
            out.push_back(Block::B);
        else if (ch != ',' && ch != ' ')
            throw error(std::string("block sequence may only contain A and B, got '") + ch + "'");
    }
    return out;
}

struct BlockChain {
    std::shared_ptr<const Graph> graph;
    EdgeColouring colouring;
    std::vector<std::vector<EdgeId>> junctions;  ///< the 5 edges between consecutive blocks
};

/// Blocks in a row, right stubs of each joined to the left stubs of the next
/// in vertical order, both ends closed by a single vertex.  Each block's
/// colours are permuted so that joined stubs agree, as in a marriage of the
/// single-block closures.
inline BlockChain block_chain(const std::vector<Block>& seq)
{
    if (seq.empty())
        throw error("empty block sequence");
    int k = static_cast<int>(seq.size());
    Vertex left_cap = 0, right_cap = 20 * k + 1;
    auto at = [](int i, int v) { return 1 + 20 * i + v; };
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::vector<Colour> pc;
    std::vector<std::vector<std::pair<Vertex, Vertex>>> junction_pairs;
    std::array<Colour, 6> perm{0, 1, 2, 3, 4, 5};
    for (int i = 0; i < k; ++i) {
        const auto& bd = detail::block_data(seq[i]);
        if (i > 0) {
            const auto& prev = detail::block_data(seq[i - 1]);
            std::array<Colour, 6> next{};
            for (int s = 0; s < 5; ++s)
                next[bd.left[s][1]] = perm[prev.right[s][1]];
            junction_pairs.emplace_back();
            for (int s = 0; s < 5; ++s) {
                pairs.emplace_back(at(i - 1, prev.right[s][0]), at(i, bd.left[s][0]));
                pc.push_back(perm[prev.right[s][1]]);
                junction_pairs.back().push_back(pairs.back());
            }
            perm = next;
        } else {
            for (int s = 0; s < 5; ++s) {
                pairs.emplace_back(left_cap, at(0, bd.left[s][0]));
                pc.push_back(perm[bd.left[s][1]]);
            }
        }
        for (auto& e : bd.edges) {
            pairs.emplace_back(at(i, e[0]), at(i, e[1]));
            pc.push_back(perm[e[2]]);
        }
        if (i == k - 1)
            for (int s = 0; s < 5; ++s) {
                pairs.emplace_back(at(i, bd.right[s][0]), right_cap);
                pc.push_back(perm[bd.right[s][1]]);
            }
    }
    BlockChain r;
    r.graph = std::make_shared<const Graph>(20 * k + 2, pairs);
    std::vector<Colour> colours(r.graph->size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        colours[r.graph->edge_id(pairs[i].first, pairs[i].second)] = pc[i];
    r.colouring = EdgeColouring(r.graph, std::move(colours), 5);
    for (auto& jp : junction_pairs) {
        r.junctions.emplace_back();
        for (auto [u, v] : jp)
            r.junctions.back().push_back(r.graph->edge_id(u, v));
    }
    return r;
}

}  // namespace pfact
