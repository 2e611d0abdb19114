#pragma once

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

#include "pfact/graph.hpp"

namespace pfact {

namespace detail {

/// Small unit-capacity max-flow network (Edmonds-Karp); adequate for corpus sizes.
class flow_network {
public:
    explicit flow_network(int n) : head_(n, -1) {}

    void add_arc(int a, int b, int cap)
    {
        to_.push_back(b), cap_.push_back(cap), next_.push_back(head_[a]), head_[a] = static_cast<int>(to_.size()) - 1;
        to_.push_back(a), cap_.push_back(0), next_.push_back(head_[b]), head_[b] = static_cast<int>(to_.size()) - 1;
    }

    /// Undirected edge of capacity cap in both directions.
    void add_edge(int a, int b, int cap)
    {
        to_.push_back(b), cap_.push_back(cap), next_.push_back(head_[a]), head_[a] = static_cast<int>(to_.size()) - 1;
        to_.push_back(a), cap_.push_back(cap), next_.push_back(head_[b]), head_[b] = static_cast<int>(to_.size()) - 1;
    }

    /// Max flow from s to t, stopping early once `bound` is reached.
    int max_flow(int s, int t, int bound = std::numeric_limits<int>::max())
    {
        int flow = 0;
        std::vector<int> via(head_.size());
        while (flow < bound) {
            std::fill(via.begin(), via.end(), -1);
            std::queue<int> q;
            q.push(s);
            via[s] = -2;
            while (!q.empty() && via[t] == -1) {
                int v = q.front();
                q.pop();
                for (int a = head_[v]; a >= 0; a = next_[a])
                    if (cap_[a] > 0 && via[to_[a]] == -1) {
                        via[to_[a]] = a;
                        q.push(to_[a]);
                    }
            }
            if (via[t] == -1)
                break;
            int push = std::numeric_limits<int>::max();
            for (int v = t; v != s; v = to_[via[v] ^ 1])
                push = std::min(push, cap_[via[v]]);
            for (int v = t; v != s; v = to_[via[v] ^ 1]) {
                cap_[via[v]] -= push;
                cap_[via[v] ^ 1] += push;
            }
            flow += push;
        }
        return flow;
    }

private:
    std::vector<int> head_, to_, cap_, next_;
};

constexpr int flow_infinity = 1 << 20;

}  // namespace detail

/// Maximum number of internally disjoint s-t paths (s, t non-adjacent).
inline int local_vertex_connectivity(const Graph& g, Vertex s, Vertex t, int bound = std::numeric_limits<int>::max())
{
    // vertex v splits into v_in = 2v and v_out = 2v+1
    detail::flow_network net(2 * g.order());
    for (Vertex v = 0; v < g.order(); ++v)
        net.add_arc(2 * v, 2 * v + 1, (v == s || v == t) ? detail::flow_infinity : 1);
    for (auto& e : g.edges()) {
        net.add_arc(2 * e.u + 1, 2 * e.v, detail::flow_infinity);
        net.add_arc(2 * e.v + 1, 2 * e.u, detail::flow_infinity);
    }
    return net.max_flow(2 * s + 1, 2 * t, bound);
}

/// Vertex connectivity; 0 for disconnected graphs, n-1 for complete graphs.
inline int vertex_connectivity(const Graph& g)
{
    int n = g.order();
    if (n <= 1)
        return 0;
    if (!is_connected(g))
        return 0;
    int min_degree = n;
    for (Vertex v = 0; v < n; ++v)
        min_degree = std::min(min_degree, g.degree(v));
    bool complete = true;
    for (Vertex v = 0; v < n && complete; ++v)
        complete = g.degree(v) == n - 1;
    if (complete)
        return n - 1;
    // Some vertex among v_0..v_k lies outside a minimum separator, so
    // trying sources v_0..v_best against every non-neighbour suffices.
    int best = min_degree;
    for (Vertex s = 0; s <= best && s < n; ++s)
        for (Vertex t = s + 1; t < n; ++t)
            if (!g.adjacent(s, t))
                best = std::min(best, local_vertex_connectivity(g, s, t, best));
    return best;
}

/// Bridges in EdgeId order (iterative low-link).
inline std::vector<EdgeId> bridges(const Graph& g)
{
    int n = g.order();
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<char> is_bridge(g.size(), 0);
    int timer = 0;
    struct frame {
        Vertex v;
        EdgeId parent_edge;
        std::size_t next;
    };
    std::vector<frame> stack;
    for (Vertex root = 0; root < n; ++root) {
        if (disc[root] >= 0)
            continue;
        disc[root] = low[root] = timer++;
        stack.push_back({root, -1, 0});
        while (!stack.empty()) {
            frame& f = stack.back();
            auto nb = g.neighbours(f.v);
            auto inc = g.incident(f.v);
            if (f.next < nb.size()) {
                Vertex w = nb[f.next];
                EdgeId e = inc[f.next];
                ++f.next;
                if (e == f.parent_edge)
                    continue;
                if (disc[w] >= 0) {
                    low[f.v] = std::min(low[f.v], disc[w]);
                } else {
                    disc[w] = low[w] = timer++;
                    stack.push_back({w, e, 0});
                }
            } else {
                frame done = f;
                stack.pop_back();
                if (!stack.empty()) {
                    Vertex p = stack.back().v;
                    low[p] = std::min(low[p], low[done.v]);
                    if (low[done.v] > disc[p])
                        is_bridge[done.parent_edge] = 1;
                }
            }
        }
    }
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < g.size(); ++e)
        if (is_bridge[e])
            out.push_back(e);
    return out;
}

inline bool is_bridgeless(const Graph& g) { return bridges(g).empty(); }

/// Minimum number of edges separating vertex set S from vertex set T.
inline int min_edge_cut_between(const Graph& g, const std::vector<Vertex>& sources, const std::vector<Vertex>& sinks,
                                int bound = std::numeric_limits<int>::max())
{
    int n = g.order();
    detail::flow_network net(n + 2);
    int s = n, t = n + 1;
    for (auto& e : g.edges())
        net.add_edge(e.u, e.v, 1);
    for (Vertex v : sources)
        net.add_arc(s, v, detail::flow_infinity);
    for (Vertex v : sinks)
        net.add_arc(v, t, detail::flow_infinity);
    return net.max_flow(s, t, bound);
}

/// Smallest edge cut leaving at least two components that each contain an edge.
///
/// Every such cut separates some pair of vertex-disjoint edges, so the answer
/// is the minimum over those pairs of the cut separating their endpoints.
inline int essential_edge_connectivity(const Graph& g)
{
    if (!is_connected(g) || g.size() < 2)
        throw error("essential edge-connectivity needs a connected graph with at least two edges");
    int best = std::numeric_limits<int>::max();
    for (EdgeId a = 0; a < g.size(); ++a)
        for (EdgeId b = a + 1; b < g.size(); ++b) {
            const Edge& ea = g.edge(a);
            const Edge& eb = g.edge(b);
            if (ea.has(eb.u) || ea.has(eb.v))
                continue;
            best = std::min(best, min_edge_cut_between(g, {ea.u, ea.v}, {eb.u, eb.v}, best));
        }
    if (best == std::numeric_limits<int>::max())
        throw error("no essential cut");
    return best;
}

/// Every vertex set of size k whose removal disconnects g, in lexicographic order.
inline std::vector<VertexCut> vertex_cuts_of_size(const Graph& g, int k)
{
    std::vector<VertexCut> out;
    int n = g.order();
    if (k < 0 || k > n - 2)
        return out;
    std::vector<Vertex> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        if (!is_connected(remove_vertices(g, pick).graph))
            out.push_back({pick});
        int i = k - 1;
        while (i >= 0 && pick[i] == n - k + i)
            --i;
        if (i < 0)
            break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    return out;
}

}  // namespace pfact
