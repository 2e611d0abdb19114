#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <thread>
#include <vector>

#include "pfact/colouring.hpp"
#include "pfact/enumerate.hpp"

namespace pfact {

/// Swaps colours i and j on the edges of one bichromatic component.
inline EdgeColouring kempe_switch(const EdgeColouring& col, const Cycle& cycle)
{
    const Graph& g = col.graph();
    if (cycle.size() < 2)
        throw error("kempe_switch: cycle too short");
    auto ids = [&] {
        std::vector<EdgeId> out;
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            auto e = g.find_edge(cycle[k], cycle[(k + 1) % cycle.size()]);
            if (!e)
                throw error("kempe_switch: cycle uses a non-edge");
            out.push_back(*e);
        }
        return out;
    }();
    Colour i = col.colour(ids[0]), j = col.colour(ids[1]);
    if (i == j)
        throw error("kempe_switch: cycle is not bichromatic");
    for (std::size_t k = 0; k < ids.size(); ++k)
        if (col.colour(ids[k]) != (k % 2 ? j : i))
            throw error("kempe_switch: cycle is not bichromatic");
    // a component of E_i u E_j is closed: every vertex has both colours on the cycle
    auto comps = bichromatic_components(col, i, j);
    if (std::find(comps.begin(), comps.end(), canonical_cycle(cycle)) == comps.end())
        throw error("kempe_switch: cycle is not a bichromatic component");
    std::vector<Colour> out = col.colours();
    for (EdgeId e : ids)
        out[e] = (out[e] == i) ? j : i;
    return EdgeColouring(col.graph_ptr(), std::move(out), col.colour_count());
}

namespace detail {

class union_find {
public:
    explicit union_find(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x)
            x = parent_[x] = parent_[parent_[x]];
        return x;
    }

    /// Keeps the smaller index as root so class representatives are stable.
    void unite(std::size_t a, std::size_t b)
    {
        a = find(a), b = find(b);
        if (a == b)
            return;
        if (b < a)
            std::swap(a, b);
        parent_[b] = a;
    }

private:
    std::vector<std::size_t> parent_;
};

/// Canonical forms of every single switch from colours c (excluding trivial ones).
inline void switch_neighbours(const Graph& g, const std::vector<Colour>& c, int d, std::vector<std::vector<Colour>>& out)
{
    colour_table t(g, c, d);
    std::vector<char> seen(g.order());
    std::vector<EdgeId> cycle;
    for (int i = 1; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j) {
            std::fill(seen.begin(), seen.end(), 0);
            for (Vertex s = 0; s < g.order(); ++s) {
                if (seen[s])
                    continue;
                cycle.clear();
                Vertex v = s;
                Colour k = static_cast<Colour>(i);
                do {
                    seen[v] = 1;
                    Vertex w = t.step(v, k);
                    cycle.push_back(*g.find_edge(v, w));
                    v = w;
                    k = (k == i) ? static_cast<Colour>(j) : static_cast<Colour>(i);
                } while (v != s);
                if (static_cast<int>(cycle.size()) == g.order())
                    continue;  // spanning: a pure colour transposition
                std::vector<Colour> next = c;
                for (EdgeId e : cycle)
                    next[e] = (next[e] == i) ? static_cast<Colour>(j) : static_cast<Colour>(i);
                out.push_back(canonical_colours(next));
            }
        }
}

}  // namespace detail

enum class KempeStatus { complete, over_cap, no_colouring, not_enumerable };

struct KempePartition {
    KempeStatus status = KempeStatus::complete;
    EnumerationStatus enumeration = EnumerationStatus::not_run;
    std::vector<EdgeColouring> colourings;  ///< sorted lexicographically
    std::vector<int> class_of;              ///< numbered by first member
    std::vector<std::size_t> class_sizes;

    int class_count() const { return static_cast<int>(class_sizes.size()); }
};

/// Edge-Kempe classes over all 1-factorisations (up to colour permutation).
/// Refuses (status over_cap) when the graph has more than `cap` colourings.
inline KempePartition kempe_classes(const Graph& g, const EnumerationOptions& opt = {}, std::size_t cap = 10'000'000)
{
    KempePartition p;
    std::vector<std::vector<Colour>> all;
    struct part {
        std::vector<std::vector<Colour>> items;
    };
    std::atomic<std::size_t> seen{0};
    auto r = fold_factorisations<part>(g, opt, [&](part& pt, const std::vector<Colour>& c) {
        if (seen.fetch_add(1) >= cap)
            return false;
        pt.items.push_back(c);
        return true;
    });
    p.enumeration = r.status;
    if (r.status == EnumerationStatus::stopped) {
        p.status = KempeStatus::over_cap;
        return p;
    }
    if (r.status == EnumerationStatus::no_colouring) {
        p.status = KempeStatus::no_colouring;
        return p;
    }
    if (r.status != EnumerationStatus::complete) {
        p.status = KempeStatus::not_enumerable;
        return p;
    }
    for (auto& pt : r.parts)
        for (auto& c : pt.items)
            all.push_back(std::move(c));
    std::sort(all.begin(), all.end());

    int d = g.regularity();
    std::size_t n = all.size();
    int jobs = std::max(1, opt.jobs);
    // workers emit (a, b) index pairs; unions are applied afterwards in order
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> links(jobs);
    std::atomic<bool> escaped{false};
    auto work = [&](int w) {
        std::vector<std::vector<Colour>> nbrs;
        for (std::size_t a = w; a < n; a += jobs) {
            nbrs.clear();
            detail::switch_neighbours(g, all[a], d, nbrs);
            for (auto& c : nbrs) {
                auto it = std::lower_bound(all.begin(), all.end(), c);
                if (it == all.end() || *it != c) {
                    escaped = true;
                    continue;
                }
                std::size_t b = it - all.begin();
                if (a != b)
                    links[w].emplace_back(std::min(a, b), std::max(a, b));
            }
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back(work, w);
        for (auto& t : pool)
            t.join();
    }
    if (escaped)
        throw error("internal error: a switch left the colouring set");
    std::vector<std::pair<std::size_t, std::size_t>> merged;
    for (auto& l : links)
        merged.insert(merged.end(), l.begin(), l.end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    detail::union_find uf(n);
    for (auto [a, b] : merged)
        uf.unite(a, b);

    auto shared = std::make_shared<const Graph>(g);
    p.class_of.assign(n, -1);
    std::vector<int> id_of_root(n, -1);
    for (std::size_t a = 0; a < n; ++a) {
        std::size_t root = uf.find(a);
        if (id_of_root[root] < 0) {
            id_of_root[root] = static_cast<int>(p.class_sizes.size());
            p.class_sizes.push_back(0);
        }
        p.class_of[a] = id_of_root[root];
        ++p.class_sizes[p.class_of[a]];
    }
    p.colourings.reserve(n);
    for (auto& c : all)
        p.colourings.emplace_back(shared, std::move(c), d);
    return p;
}

}  // namespace pfact
