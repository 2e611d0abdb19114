#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pfact/error.hpp"

namespace pfact {

using Vertex = int;
using EdgeId = int;

struct Edge {
    Vertex u;
    Vertex v;

    Vertex other(Vertex w) const { return w == u ? v : u; }
    bool has(Vertex w) const { return w == u || w == v; }
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..n-1.
///
/// Edges are stored sorted lexicographically by (u, v) with u < v and the
/// position in that order is the EdgeId, so ids are a pure function of the
/// edge set.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n, std::vector<std::pair<Vertex, Vertex>> pairs = {}) : n_(n)
    {
        if (n < 0)
            throw error("negative vertex count");
        edges_.reserve(pairs.size());
        for (auto [a, b] : pairs) {
            if (a < 0 || b < 0 || a >= n || b >= n)
                throw error("edge endpoint out of range: " + std::to_string(a) + " " + std::to_string(b));
            if (a == b)
                throw error("loop at vertex " + std::to_string(a));
            edges_.push_back(a < b ? Edge{a, b} : Edge{b, a});
        }
        std::sort(edges_.begin(), edges_.end());
        for (std::size_t i = 1; i < edges_.size(); ++i)
            if (edges_[i] == edges_[i - 1])
                throw error("duplicate edge " + std::to_string(edges_[i].u) + " " + std::to_string(edges_[i].v));

        adj_.assign(n, {});
        inc_.assign(n, {});
        std::vector<std::vector<std::pair<Vertex, EdgeId>>> tmp(n);
        for (EdgeId e = 0; e < size(); ++e) {
            tmp[edges_[e].u].emplace_back(edges_[e].v, e);
            tmp[edges_[e].v].emplace_back(edges_[e].u, e);
        }
        for (Vertex v = 0; v < n; ++v) {
            std::sort(tmp[v].begin(), tmp[v].end());
            for (auto [w, e] : tmp[v]) {
                adj_[v].push_back(w);
                inc_[v].push_back(e);
            }
        }
    }

    int order() const { return n_; }
    int size() const { return static_cast<int>(edges_.size()); }

    std::span<const Edge> edges() const { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }

    /// Neighbours in increasing id order.
    std::span<const Vertex> neighbours(Vertex v) const { return adj_[v]; }
    /// Incident edge ids, parallel to neighbours().
    std::span<const EdgeId> incident(Vertex v) const { return inc_[v]; }

    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

    std::optional<EdgeId> find_edge(Vertex a, Vertex b) const
    {
        if (a < 0 || b < 0 || a >= n_ || b >= n_)
            return std::nullopt;
        auto it = std::lower_bound(adj_[a].begin(), adj_[a].end(), b);
        if (it == adj_[a].end() || *it != b)
            return std::nullopt;
        return inc_[a][it - adj_[a].begin()];
    }

    EdgeId edge_id(Vertex a, Vertex b) const
    {
        auto e = find_edge(a, b);
        if (!e)
            throw error("no edge " + std::to_string(a) + " " + std::to_string(b));
        return *e;
    }

    bool adjacent(Vertex a, Vertex b) const { return find_edge(a, b).has_value(); }

    /// Common degree, or -1 when the graph is not regular (or empty).
    int regularity() const
    {
        if (n_ == 0)
            return -1;
        int d = degree(0);
        for (Vertex v = 1; v < n_; ++v)
            if (degree(v) != d)
                return -1;
        return d;
    }

    bool is_regular(int d) const { return n_ > 0 && regularity() == d; }

    std::vector<std::pair<Vertex, Vertex>> edge_pairs() const
    {
        std::vector<std::pair<Vertex, Vertex>> out;
        out.reserve(edges_.size());
        for (auto& e : edges_)
            out.emplace_back(e.u, e.v);
        return out;
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<std::vector<EdgeId>> inc_;
};

/// A graph derived from another one together with the map back to the parent's vertex ids.
struct Subgraph {
    Graph graph;
    std::vector<Vertex> to_parent;
    std::vector<Vertex> from_parent;  ///< -1 for removed vertices
};

inline Subgraph remove_vertices(const Graph& g, std::span<const Vertex> removed)
{
    std::vector<char> gone(g.order(), 0);
    for (Vertex v : removed)
        gone.at(v) = 1;
    Subgraph s;
    s.from_parent.assign(g.order(), -1);
    for (Vertex v = 0; v < g.order(); ++v)
        if (!gone[v]) {
            s.from_parent[v] = static_cast<Vertex>(s.to_parent.size());
            s.to_parent.push_back(v);
        }
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (auto& e : g.edges())
        if (!gone[e.u] && !gone[e.v])
            pairs.emplace_back(s.from_parent[e.u], s.from_parent[e.v]);
    s.graph = Graph(static_cast<int>(s.to_parent.size()), std::move(pairs));
    return s;
}

inline Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep)
{
    std::vector<char> in(g.order(), 0);
    for (Vertex v : keep)
        in.at(v) = 1;
    std::vector<Vertex> removed;
    for (Vertex v = 0; v < g.order(); ++v)
        if (!in[v])
            removed.push_back(v);
    return remove_vertices(g, removed);
}

/// Same vertex set, the listed edges deleted.
inline Graph remove_edges(const Graph& g, std::span<const EdgeId> removed)
{
    std::vector<char> gone(g.size(), 0);
    for (EdgeId e : removed)
        gone.at(e) = 1;
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (EdgeId e = 0; e < g.size(); ++e)
        if (!gone[e])
            pairs.emplace_back(g.edge(e).u, g.edge(e).v);
    return Graph(g.order(), std::move(pairs));
}

/// Image of g under the vertex map perm (perm[v] is the new id of v).
inline Graph relabel(const Graph& g, std::span<const Vertex> perm)
{
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (auto& e : g.edges())
        pairs.emplace_back(perm[e.u], perm[e.v]);
    return Graph(g.order(), std::move(pairs));
}

/// Connected-component label per vertex, labels numbered in order of least vertex.
inline std::vector<int> component_labels(const Graph& g, int* count = nullptr)
{
    std::vector<int> label(g.order(), -1);
    int c = 0;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.order(); ++s) {
        if (label[s] >= 0)
            continue;
        label[s] = c;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbours(v))
                if (label[w] < 0) {
                    label[w] = c;
                    stack.push_back(w);
                }
        }
        ++c;
    }
    if (count)
        *count = c;
    return label;
}

inline int component_count(const Graph& g)
{
    int c = 0;
    component_labels(g, &c);
    return c;
}

inline bool is_connected(const Graph& g) { return g.order() <= 1 || component_count(g) == 1; }

inline Graph complete_graph(int n)
{
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            pairs.emplace_back(a, b);
    return Graph(n, std::move(pairs));
}

inline Graph cycle_graph(int n)
{
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex a = 0; a < n; ++a)
        pairs.emplace_back(a, (a + 1) % n);
    return Graph(n, std::move(pairs));
}

// ---------------------------------------------------------------------------
// Cycles and 2-factors

/// Cyclic vertex sequence; the closing edge back to the front is implicit.
using Cycle = std::vector<Vertex>;
/// Vertex-disjoint cycles covering every vertex.
using TwoFactor = std::vector<Cycle>;

/// Rotate/reflect so the cycle starts at its least vertex and continues
/// towards the smaller of that vertex's two cycle neighbours.
inline Cycle canonical_cycle(Cycle c)
{
    if (c.size() < 3)
        return c;
    auto it = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), it, c.end());
    if (c.back() < c[1])
        std::reverse(c.begin() + 1, c.end());
    return c;
}

inline std::vector<EdgeId> cycle_edges(const Graph& g, const Cycle& c)
{
    std::vector<EdgeId> out;
    out.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        out.push_back(g.edge_id(c[i], c[(i + 1) % c.size()]));
    return out;
}

inline bool is_cycle_in(const Graph& g, const Cycle& c)
{
    if (c.size() < 3)
        return false;
    std::vector<char> seen(g.order(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] < 0 || c[i] >= g.order() || seen[c[i]])
            return false;
        seen[c[i]] = 1;
        if (!g.adjacent(c[i], c[(i + 1) % c.size()]))
            return false;
    }
    return true;
}

inline bool is_two_factor_of(const Graph& g, const TwoFactor& f)
{
    std::vector<char> seen(g.order(), 0);
    std::size_t covered = 0;
    for (auto& c : f) {
        if (!is_cycle_in(g, c))
            return false;
        for (Vertex v : c) {
            if (seen[v])
                return false;
            seen[v] = 1;
            ++covered;
        }
    }
    return covered == static_cast<std::size_t>(g.order());
}

inline std::vector<EdgeId> two_factor_edges(const Graph& g, const TwoFactor& f)
{
    std::vector<EdgeId> out;
    for (auto& c : f)
        for (EdgeId e : cycle_edges(g, c))
            out.push_back(e);
    std::sort(out.begin(), out.end());
    return out;
}

/// Sorted multiset of cycle lengths.
inline std::vector<int> two_factor_shape(const TwoFactor& f)
{
    std::vector<int> s;
    for (auto& c : f)
        s.push_back(static_cast<int>(c.size()));
    std::sort(s.begin(), s.end());
    return s;
}

// ---------------------------------------------------------------------------
// Cuts

struct VertexCut {
    std::vector<Vertex> vertices;
};

struct EdgeCut {
    std::vector<Vertex> side;   ///< S, sorted
    std::vector<EdgeId> edges;  ///< M, edges with exactly one end in S, EdgeId order
};

inline EdgeCut edge_cut(const Graph& g, std::span<const Vertex> side)
{
    std::vector<char> in(g.order(), 0);
    for (Vertex v : side) {
        if (v < 0 || v >= g.order())
            throw error("cut vertex out of range");
        in[v] = 1;
    }
    auto members = std::count(in.begin(), in.end(), 1);
    if (members == 0 || members == g.order())
        throw error("degenerate partition");
    EdgeCut cut;
    for (Vertex v = 0; v < g.order(); ++v)
        if (in[v])
            cut.side.push_back(v);
    for (EdgeId e = 0; e < g.size(); ++e)
        if (in[g.edge(e).u] != in[g.edge(e).v])
            cut.edges.push_back(e);
    return cut;
}

// ---------------------------------------------------------------------------
// Embeddings

/// Cyclic order of incident edges at every vertex.
struct RotationSystem {
    std::vector<std::vector<EdgeId>> order;
    bool planar = false;  ///< claimed to be a plane embedding; checked by validate_rotation
};

/// Builds a rotation system from cyclic neighbour lists.
inline RotationSystem rotation_from_neighbours(const Graph& g, const std::vector<std::vector<Vertex>>& nbrs, bool planar = true)
{
    if (static_cast<int>(nbrs.size()) != g.order())
        throw error("rotation system does not cover every vertex");
    RotationSystem r;
    r.planar = planar;
    r.order.resize(g.order());
    for (Vertex v = 0; v < g.order(); ++v) {
        for (Vertex w : nbrs[v]) {
            auto e = g.find_edge(v, w);
            if (!e)
                throw error("rotation at " + std::to_string(v) + " names non-neighbour " + std::to_string(w));
            r.order[v].push_back(*e);
        }
    }
    return r;
}

inline std::vector<std::vector<Vertex>> rotation_neighbours(const Graph& g, const RotationSystem& r)
{
    std::vector<std::vector<Vertex>> out(g.order());
    for (Vertex v = 0; v < g.order(); ++v)
        for (EdgeId e : r.order[v])
            out[v].push_back(g.edge(e).other(v));
    return out;
}

/// Throws unless every incident edge appears exactly once in its endpoint's cycle.
inline void check_rotation_consistent(const Graph& g, const RotationSystem& r)
{
    if (static_cast<int>(r.order.size()) != g.order())
        throw error("inconsistent rotation: wrong vertex count");
    for (Vertex v = 0; v < g.order(); ++v) {
        auto got = r.order[v];
        std::sort(got.begin(), got.end());
        std::vector<EdgeId> want(g.incident(v).begin(), g.incident(v).end());
        std::sort(want.begin(), want.end());
        if (got != want)
            throw error("inconsistent rotation at vertex " + std::to_string(v));
    }
}

/// Facial walks as vertex sequences; a face of length k has k darts.
inline std::vector<std::vector<Vertex>> face_walks(const Graph& g, const RotationSystem& r)
{
    check_rotation_consistent(g, r);
    // position of edge e in the rotation at each endpoint
    std::vector<std::map<EdgeId, int>> pos(g.order());
    for (Vertex v = 0; v < g.order(); ++v)
        for (int i = 0; i < static_cast<int>(r.order[v].size()); ++i)
            pos[v][r.order[v][i]] = i;
    // dart index: 2e for u->v (u<v), 2e+1 for v->u
    std::vector<char> used(2 * g.size(), 0);
    std::vector<std::vector<Vertex>> faces;
    for (int start = 0; start < 2 * g.size(); ++start) {
        if (used[start])
            continue;
        std::vector<Vertex> walk;
        int dart = start;
        while (!used[dart]) {
            used[dart] = 1;
            const Edge& ed = g.edge(dart / 2);
            Vertex from = (dart % 2 == 0) ? ed.u : ed.v;
            Vertex to = ed.other(from);
            walk.push_back(from);
            const auto& rot = r.order[to];
            int i = pos[to].at(dart / 2);
            EdgeId next = rot[(i + static_cast<int>(rot.size()) - 1) % rot.size()];
            dart = 2 * next + (g.edge(next).u == to ? 0 : 1);
        }
        faces.push_back(std::move(walk));
    }
    return faces;
}

/// f[k] = number of faces of length k.
inline std::vector<int> face_vector(const Graph& g, const RotationSystem& r)
{
    std::vector<int> f;
    for (auto& w : face_walks(g, r)) {
        if (f.size() <= w.size())
            f.resize(w.size() + 1, 0);
        ++f[w.size()];
    }
    return f;
}

inline int euler_characteristic(const Graph& g, const RotationSystem& r)
{
    return g.order() - g.size() + static_cast<int>(face_walks(g, r).size());
}

/// Consistency plus, for rotations flagged planar on connected graphs, n - m + f = 2.
inline void validate_rotation(const Graph& g, const RotationSystem& r)
{
    check_rotation_consistent(g, r);
    if (r.planar && is_connected(g) && euler_characteristic(g, r) != 2)
        throw error("embedding fails the Euler check");
}

}  // namespace pfact
