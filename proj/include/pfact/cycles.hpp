#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pfact/graph.hpp"

namespace pfact {

using Triangle = std::array<Vertex, 3>;  ///< sorted

inline std::vector<Triangle> triangles(const Graph& g)
{
    std::vector<Triangle> out;
    for (auto& e : g.edges())
        for (Vertex w : g.neighbours(e.v))
            if (w > e.v && g.adjacent(e.u, w))
                out.push_back({e.u, e.v, w});
    std::sort(out.begin(), out.end());
    return out;
}

/// Two triangles sharing exactly one edge; `shared` is that edge.
struct Diamond {
    Triangle first;
    Triangle second;
    EdgeId shared;
    /// The two vertices not on the shared edge (tips of the diamond).
    Vertex tip_first;
    Vertex tip_second;
};

/// Diamonds in canonical order: by shared edge, then by the pair of tips.
inline std::vector<Diamond> diamonds(const Graph& g)
{
    std::vector<Diamond> out;
    for (EdgeId e = 0; e < g.size(); ++e) {
        auto [u, v] = g.edge(e);
        std::vector<Vertex> common;
        std::set_intersection(g.neighbours(u).begin(), g.neighbours(u).end(), g.neighbours(v).begin(),
                              g.neighbours(v).end(), std::back_inserter(common));
        for (std::size_t i = 0; i < common.size(); ++i)
            for (std::size_t j = i + 1; j < common.size(); ++j) {
                Triangle a{u, v, common[i]}, b{u, v, common[j]};
                std::sort(a.begin(), a.end());
                std::sort(b.begin(), b.end());
                out.push_back({a, b, e, common[i], common[j]});
            }
    }
    return out;
}

inline std::size_t diamond_count(const Graph& g) { return diamonds(g).size(); }

namespace detail {

/// Include/exclude edge search for spanning 2-regular subgraphs.
///
/// In hamiltonian mode a closing edge is only admitted when it completes a
/// spanning cycle, and branches whose remaining edges disconnect the graph
/// are cut.  In 2-factor mode every closed cycle is admitted, optionally
/// subject to a multiset of allowed lengths.
class two_regular_search {
public:
    enum class status : std::uint8_t { open, in, out };

    two_regular_search(const Graph& g, bool hamiltonian, std::optional<std::vector<int>> shape = std::nullopt)
        : g_(g), hamiltonian_(hamiltonian), shape_(std::move(shape))
    {
        state s;
        s.edge.assign(g.size(), status::open);
        s.in_degree.assign(g.order(), 0);
        s.open_degree.assign(g.order(), 0);
        s.partner.resize(g.order());
        s.length.assign(g.order(), 0);
        for (Vertex v = 0; v < g.order(); ++v) {
            s.open_degree[v] = g.degree(v);
            s.partner[v] = v;
        }
        if (shape_)
            std::sort(shape_->begin(), shape_->end());
        s.remaining_shape = shape_.value_or(std::vector<int>{});
        root_ = std::move(s);
    }

    /// Marks an edge as required before the search starts; returns false if that is contradictory.
    bool require(EdgeId e)
    {
        return include(root_, e) && propagate(root_);
    }

    /// Calls visit(edge set) for every solution; visit returns false to stop.
    template <class Visit>
    void run(Visit&& visit)
    {
        if (g_.order() < 3)
            return;
        state s = root_;
        if (!propagate(s))
            return;
        stopped_ = false;
        search(s, visit);
    }

    /// Turns an edge-status vector into canonical cycles.
    TwoFactor cycles_of(const std::vector<status>& edge_status) const
    {
        std::vector<std::array<Vertex, 2>> nb(g_.order(), {-1, -1});
        for (EdgeId e = 0; e < g_.size(); ++e)
            if (edge_status[e] == status::in) {
                auto [u, v] = g_.edge(e);
                nb[u][nb[u][0] < 0 ? 0 : 1] = v;
                nb[v][nb[v][0] < 0 ? 0 : 1] = u;
            }
        std::vector<char> seen(g_.order(), 0);
        TwoFactor out;
        for (Vertex s = 0; s < g_.order(); ++s) {
            if (seen[s])
                continue;
            Cycle c;
            Vertex prev = -1, cur = s;
            while (!seen[cur]) {
                seen[cur] = 1;
                c.push_back(cur);
                Vertex nxt = nb[cur][0] != prev ? nb[cur][0] : nb[cur][1];
                prev = cur;
                cur = nxt;
            }
            out.push_back(canonical_cycle(std::move(c)));
        }
        return out;
    }

private:
    struct state {
        std::vector<status> edge;
        std::vector<int> in_degree;
        std::vector<int> open_degree;  ///< incident edges not excluded
        std::vector<Vertex> partner;   ///< other end of the path through an endpoint
        std::vector<int> length;       ///< edges on the path, valid at endpoints
        int in_edges = 0;
        int closed_vertices = 0;       ///< vertices on closed cycles (2-factor mode)
        std::vector<int> remaining_shape;
        std::vector<EdgeId> pending;   ///< edges whose status changed and need propagation
        std::vector<Vertex> touched;   ///< path ends whose partner changed
    };

    bool exclude(state& s, EdgeId e)
    {
        if (s.edge[e] == status::out)
            return true;
        if (s.edge[e] == status::in)
            return false;
        s.edge[e] = status::out;
        auto [u, v] = g_.edge(e);
        if (--s.open_degree[u] < 2 || --s.open_degree[v] < 2)
            return false;
        s.pending.push_back(e);
        return true;
    }

    bool include(state& s, EdgeId e)
    {
        if (s.edge[e] == status::in)
            return true;
        if (s.edge[e] == status::out)
            return false;
        auto [u, v] = g_.edge(e);
        if (s.in_degree[u] >= 2 || s.in_degree[v] >= 2)
            return false;
        bool closes = s.partner[u] == v && s.in_degree[u] > 0;
        if (closes) {
            int len = s.length[u] + 1;
            if (hamiltonian_) {
                if (len != g_.order())
                    return false;
            } else if (shape_) {
                auto it = std::find(s.remaining_shape.begin(), s.remaining_shape.end(), len);
                if (it == s.remaining_shape.end())
                    return false;
                s.remaining_shape.erase(it);
            }
            s.closed_vertices += len;
        } else {
            Vertex a = s.partner[u], b = s.partner[v];
            int len = s.length[u] + s.length[v] + 1;
            if (shape_) {
                // an open path longer than every allowed remaining cycle is dead
                int longest = s.remaining_shape.empty() ? 0 : s.remaining_shape.back();
                if (len + 1 > longest)
                    return false;
            }
            s.partner[a] = b;
            s.partner[b] = a;
            s.length[a] = s.length[b] = len;
            s.touched.push_back(a);
            s.touched.push_back(b);
        }
        s.edge[e] = status::in;
        ++s.in_degree[u];
        ++s.in_degree[v];
        ++s.in_edges;
        s.pending.push_back(e);
        return true;
    }

    /// Degree-2 forcing in both directions until fixpoint.
    bool propagate(state& s)
    {
        for (Vertex v = 0; v < g_.order(); ++v)
            if (s.open_degree[v] < 2)
                return false;
        std::vector<Vertex> todo;
        for (Vertex v = 0; v < g_.order(); ++v)
            todo.push_back(v);
        s.pending.clear();
        s.touched.clear();
        while (!todo.empty()) {
            Vertex v = todo.back();
            todo.pop_back();
            auto inc = g_.incident(v);
            if (s.in_degree[v] == 2) {
                for (EdgeId e : inc)
                    if (s.edge[e] == status::open && !exclude(s, e))
                        return false;
            } else if (s.open_degree[v] == 2) {
                for (EdgeId e : inc)
                    if (s.edge[e] == status::open && !include(s, e))
                        return false;
            }
            if (hamiltonian_ && s.in_degree[v] == 1) {
                // an edge joining the two ends of a non-spanning path would close it early
                Vertex w = s.partner[v];
                if (s.length[v] + 1 < g_.order()) {
                    if (auto e = g_.find_edge(v, w); e && s.edge[*e] == status::open && !exclude(s, *e))
                        return false;
                }
            }
            for (EdgeId e : s.pending) {
                todo.push_back(g_.edge(e).u);
                todo.push_back(g_.edge(e).v);
            }
            todo.insert(todo.end(), s.touched.begin(), s.touched.end());
            s.pending.clear();
            s.touched.clear();
        }
        if (hamiltonian_ && !open_edges_connected(s))
            return false;
        return true;
    }

    bool open_edges_connected(const state& s) const
    {
        std::vector<char> seen(g_.order(), 0);
        std::vector<Vertex> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            auto nb = g_.neighbours(v);
            auto inc = g_.incident(v);
            for (std::size_t i = 0; i < nb.size(); ++i)
                if (s.edge[inc[i]] != status::out && !seen[nb[i]]) {
                    seen[nb[i]] = 1;
                    ++count;
                    stack.push_back(nb[i]);
                }
        }
        return count == g_.order();
    }

    template <class Visit>
    void search(state& s, Visit& visit)
    {
        if (stopped_)
            return;
        // branch vertex: unsaturated, fewest open choices, lowest id
        Vertex best = -1;
        int best_choices = 0;
        for (Vertex v = 0; v < g_.order(); ++v) {
            if (s.in_degree[v] == 2)
                continue;
            int choices = s.open_degree[v] - s.in_degree[v];
            if (best < 0 || choices < best_choices) {
                best = v;
                best_choices = choices;
            }
        }
        if (best < 0) {
            if (s.in_edges == g_.order() && (!shape_ || s.remaining_shape.empty()))
                if (!visit(s.edge))
                    stopped_ = true;
            return;
        }
        EdgeId pick = -1;
        for (EdgeId e : g_.incident(best))
            if (s.edge[e] == status::open) {
                pick = e;
                break;
            }
        {
            state t = s;
            if (include(t, pick) && propagate(t))
                search(t, visit);
        }
        if (stopped_)
            return;
        if (exclude(s, pick) && propagate(s))
            search(s, visit);
    }

    const Graph& g_;
    bool hamiltonian_;
    std::optional<std::vector<int>> shape_;
    state root_;
    bool stopped_ = false;
};

}  // namespace detail

/// Streams hamiltonian cycles of g - forbidden through all required edges.
///
/// Cycles are reported in the parent graph's vertex ids, canonically
/// rotated; visit returns false to stop early.  Returns false if stopped.
template <class Visit>
bool for_each_hamiltonian_cycle(const Graph& g, std::span<const EdgeId> required, std::span<const Vertex> forbidden,
                                Visit&& visit)
{
    std::vector<char> gone(g.order(), 0);
    for (Vertex v : forbidden)
        gone.at(v) = 1;
    std::vector<int> touched(g.order(), 0);
    for (EdgeId e : required) {
        auto [u, v] = g.edge(e);
        if (gone[u] || gone[v])
            throw error("required edge touches a forbidden vertex");
        if (++touched[u] > 2 || ++touched[v] > 2)
            throw error("three required edges at one vertex");
    }
    Subgraph sub = remove_vertices(g, forbidden);
    if (sub.graph.order() < 3)
        return true;
    detail::two_regular_search search(sub.graph, true);
    for (EdgeId e : required) {
        auto [u, v] = g.edge(e);
        if (!search.require(sub.graph.edge_id(sub.from_parent[u], sub.from_parent[v])))
            return true;
    }
    bool stopped = false;
    search.run([&](const auto& status) {
        TwoFactor f = search.cycles_of(status);
        Cycle c;
        for (Vertex v : f.front())
            c.push_back(sub.to_parent[v]);
        if (!visit(canonical_cycle(std::move(c)))) {
            stopped = true;
            return false;
        }
        return true;
    });
    return !stopped;
}

/// All hamiltonian cycles, sorted.
inline std::vector<Cycle> hamiltonian_cycles(const Graph& g, std::span<const EdgeId> required = {},
                                             std::span<const Vertex> forbidden = {})
{
    std::vector<Cycle> out;
    for_each_hamiltonian_cycle(g, required, forbidden, [&](Cycle c) {
        out.push_back(std::move(c));
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

inline std::optional<Cycle> find_hamiltonian_cycle(const Graph& g, std::span<const EdgeId> required = {},
                                                   std::span<const Vertex> forbidden = {})
{
    std::optional<Cycle> found;
    for_each_hamiltonian_cycle(g, required, forbidden, [&](Cycle c) {
        found = std::move(c);
        return false;
    });
    return found;
}

inline std::size_t count_hamiltonian_cycles(const Graph& g, std::span<const EdgeId> required = {},
                                            std::span<const Vertex> forbidden = {})
{
    std::size_t count = 0;
    for_each_hamiltonian_cycle(g, required, forbidden, [&](const Cycle&) {
        ++count;
        return true;
    });
    return count;
}

/// Streams 2-factors (cycles sorted within each factor), optionally only those
/// whose cycle lengths form the given multiset.
template <class Visit>
bool for_each_two_factor(const Graph& g, std::optional<std::vector<int>> shape, Visit&& visit)
{
    detail::two_regular_search search(g, false, std::move(shape));
    bool stopped = false;
    search.run([&](const auto& status) {
        TwoFactor f = search.cycles_of(status);
        std::sort(f.begin(), f.end());
        if (!visit(std::move(f))) {
            stopped = true;
            return false;
        }
        return true;
    });
    return !stopped;
}

inline std::vector<TwoFactor> two_factors(const Graph& g, std::optional<std::vector<int>> shape = std::nullopt)
{
    std::vector<TwoFactor> out;
    for_each_two_factor(g, std::move(shape), [&](TwoFactor f) {
        out.push_back(std::move(f));
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace pfact
