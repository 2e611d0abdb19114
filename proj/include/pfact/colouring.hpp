#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pfact/graph.hpp"

namespace pfact {

using Colour = std::uint8_t;
constexpr int max_colours = 16;

/// Relabels colours in order of first occurrence along EdgeId order, which
/// gives the lexicographically least sequence in the colour-permutation class.
inline std::vector<Colour> canonical_colours(const std::vector<Colour>& c)
{
    std::array<Colour, max_colours + 1> map{};
    Colour next = 1;
    std::vector<Colour> out(c.size());
    for (std::size_t e = 0; e < c.size(); ++e) {
        if (c[e] == 0 || c[e] > max_colours)
            throw error("colour out of range at edge " + std::to_string(e));
        if (!map[c[e]])
            map[c[e]] = next++;
        out[e] = map[c[e]];
    }
    return out;
}

/// Edge colouring of a shared host graph, colours 1..d indexed by EdgeId.
class EdgeColouring {
public:
    EdgeColouring() = default;

    EdgeColouring(std::shared_ptr<const Graph> g, std::vector<Colour> colours, int d = 0)
        : graph_(std::move(g)), colours_(std::move(colours)), d_(d)
    {
        if (!graph_)
            throw error("colouring without a graph");
        if (static_cast<int>(colours_.size()) != graph_->size())
            throw error("colour array length " + std::to_string(colours_.size()) + " does not match edge count " +
                        std::to_string(graph_->size()));
        if (d_ == 0)
            d_ = colours_.empty() ? 0 : *std::max_element(colours_.begin(), colours_.end());
        if (d_ > max_colours)
            throw error("too many colours");
        for (Colour c : colours_)
            if (c < 1 || c > d_)
                throw error("colour " + std::to_string(c) + " outside 1.." + std::to_string(d_));
    }

    const Graph& graph() const { return *graph_; }
    const std::shared_ptr<const Graph>& graph_ptr() const { return graph_; }
    const std::vector<Colour>& colours() const { return colours_; }
    Colour colour(EdgeId e) const { return colours_[e]; }
    int colour_count() const { return d_; }

    /// Incident edges carry distinct colours.
    bool is_proper() const
    {
        for (Vertex v = 0; v < graph_->order(); ++v) {
            unsigned seen = 0;
            for (EdgeId e : graph_->incident(v)) {
                unsigned bit = 1u << colours_[e];
                if (seen & bit)
                    return false;
                seen |= bit;
            }
        }
        return true;
    }

    /// Proper on a d-regular graph with d colours, i.e. every class is a perfect matching.
    bool is_one_factorisation() const { return graph_->is_regular(d_) && is_proper(); }

    /// Edge at v with colour c, or -1.
    EdgeId edge_at(Vertex v, Colour c) const
    {
        for (EdgeId e : graph_->incident(v))
            if (colours_[e] == c)
                return e;
        return -1;
    }

    std::vector<EdgeId> colour_class(Colour c) const
    {
        std::vector<EdgeId> out;
        for (EdgeId e = 0; e < graph_->size(); ++e)
            if (colours_[e] == c)
                out.push_back(e);
        return out;
    }

    EdgeColouring canonical() const { return EdgeColouring(graph_, canonical_colours(colours_), d_); }
    bool is_canonical() const { return canonical_colours(colours_) == colours_; }

    /// Applies perm (perm[c] is the new colour of c; perm[0] unused).
    EdgeColouring permuted(const std::vector<Colour>& perm) const
    {
        std::vector<Colour> out(colours_.size());
        for (std::size_t e = 0; e < colours_.size(); ++e)
            out[e] = perm.at(colours_[e]);
        return EdgeColouring(graph_, std::move(out), d_);
    }

    friend bool operator==(const EdgeColouring& a, const EdgeColouring& b)
    {
        return a.colours_ == b.colours_ && (a.graph_ == b.graph_ || *a.graph_ == *b.graph_);
    }

private:
    std::shared_ptr<const Graph> graph_;
    std::vector<Colour> colours_;
    int d_ = 0;
};

inline void require_one_factorisation(const EdgeColouring& col)
{
    if (!col.is_one_factorisation())
        throw error("not a 1-factorisation");
}

/// Per-vertex colour -> neighbour table for fast bichromatic walks.
class colour_table {
public:
    colour_table() = default;

    colour_table(const Graph& g, const std::vector<Colour>& colours, int d) { assign(g, colours, d); }

    void assign(const Graph& g, const std::vector<Colour>& colours, int d)
    {
        n_ = g.order();
        d_ = d;
        next_.assign(static_cast<std::size_t>(n_) * (d + 1), -1);
        for (EdgeId e = 0; e < g.size(); ++e) {
            auto [u, v] = g.edge(e);
            next_[u * (d + 1) + colours[e]] = v;
            next_[v * (d + 1) + colours[e]] = u;
        }
    }

    Vertex step(Vertex v, Colour c) const { return next_[v * (d_ + 1) + c]; }

    /// Number of cycles of E_i u E_j; requires both classes to be perfect matchings.
    int cycle_count(Colour i, Colour j, std::vector<char>& seen) const
    {
        seen.assign(n_, 0);
        int cycles = 0;
        for (Vertex s = 0; s < n_; ++s) {
            if (seen[s])
                continue;
            ++cycles;
            Vertex v = s;
            Colour c = i;
            do {
                seen[v] = 1;
                v = step(v, c);
                c = (c == i) ? j : i;
            } while (v != s);
        }
        return cycles;
    }

    /// True when E_i u E_j is one spanning cycle.
    bool is_perfect_pair(Colour i, Colour j) const
    {
        Vertex v = 0;
        Colour c = i;
        int steps = 0;
        do {
            v = step(v, c);
            c = (c == i) ? j : i;
            ++steps;
        } while (v != 0);
        return steps == n_;
    }

private:
    int n_ = 0;
    int d_ = 0;
    std::vector<Vertex> next_;
};

/// Index of the unordered colour pair (i, j), 1 <= i < j <= d, in lexicographic order.
inline int pair_index(int d, int i, int j)
{
    if (i > j)
        std::swap(i, j);
    // pairs (1,2)..(1,d), (2,3)..., each row a shorter by one
    return (i - 1) * d - (i - 1) * i / 2 + (j - i - 1);
}

struct PerfectPairProfile {
    int d = 0;
    int n = 0;
    std::vector<int> cycles;     ///< indexed by pair_index
    std::vector<char> perfect;   ///< indexed by pair_index
    int k = 0;

    bool is_perfect(int i, int j) const { return perfect[pair_index(d, i, j)]; }
    int cycle_count(int i, int j) const { return cycles[pair_index(d, i, j)]; }
    int pair_count() const { return d * (d - 1) / 2; }
    bool all_perfect() const { return k == pair_count(); }
};

/// Counts perfect pairs by walking every bichromatic 2-factor.
inline PerfectPairProfile perfect_pairs(const EdgeColouring& col)
{
    require_one_factorisation(col);
    const Graph& g = col.graph();
    int d = col.colour_count();
    colour_table t(g, col.colours(), d);
    PerfectPairProfile p;
    p.d = d;
    p.n = g.order();
    std::vector<char> seen;
    for (int i = 1; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j) {
            int c = t.cycle_count(static_cast<Colour>(i), static_cast<Colour>(j), seen);
            p.cycles.push_back(c);
            p.perfect.push_back(c == 1);
            p.k += (c == 1);
        }
    return p;
}

/// Perfect-pair count for a raw colour array (used inside enumeration loops).
inline int perfect_pair_count(const colour_table& t, int d)
{
    int k = 0;
    for (int i = 1; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j)
            k += t.is_perfect_pair(static_cast<Colour>(i), static_cast<Colour>(j));
    return k;
}

/// Cycles of E_i u E_j as canonical vertex cycles, sorted.
inline std::vector<Cycle> bichromatic_components(const EdgeColouring& col, Colour i, Colour j)
{
    if (i == j)
        throw error("bichromatic components need two distinct colours");
    if (i < 1 || j < 1 || i > col.colour_count() || j > col.colour_count())
        throw error("colour outside the palette");
    require_one_factorisation(col);
    const Graph& g = col.graph();
    colour_table t(g, col.colours(), col.colour_count());
    std::vector<char> seen(g.order(), 0);
    std::vector<Cycle> out;
    for (Vertex s = 0; s < g.order(); ++s) {
        if (seen[s])
            continue;
        Cycle c;
        Vertex v = s;
        Colour k = i;
        do {
            seen[v] = 1;
            c.push_back(v);
            v = t.step(v, k);
            k = (k == i) ? j : i;
        } while (v != s);
        out.push_back(canonical_cycle(std::move(c)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace pfact
