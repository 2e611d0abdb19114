#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "pfact/colouring.hpp"
#include "pfact/graph.hpp"

namespace pfact {

enum class EnumerationStatus {
    not_run,
    complete,       ///< the whole search tree was explored
    stopped,        ///< a visitor asked to stop
    no_colouring,   ///< explored completely, no proper d-edge-colouring exists
    not_regular,
    odd_order,
    disconnected,
};

inline const char* to_string(EnumerationStatus s)
{
    switch (s) {
    case EnumerationStatus::not_run: return "not run";
    case EnumerationStatus::complete: return "complete";
    case EnumerationStatus::stopped: return "stopped";
    case EnumerationStatus::no_colouring: return "no proper d-colouring";
    case EnumerationStatus::not_regular: return "not regular";
    case EnumerationStatus::odd_order: return "odd order";
    case EnumerationStatus::disconnected: return "disconnected";
    }
    return "?";
}

struct EnumerationOptions {
    int jobs = 1;
    /// Branching depth at which the tree is cut into tasks; negative picks one from `jobs`.
    int split_depth = -1;
};

namespace detail {

/// Branch-and-bound over proper d-edge-colourings of a d-regular graph.
///
/// The d edges at vertex 0 are fixed to colours 1..d in adjacency order.
/// Those are EdgeIds 0..d-1, so every colouring reached is already in
/// canonical (first-occurrence) form and each colour-permutation class is
/// met exactly once.
class factorisation_search {
public:
    explicit factorisation_search(const Graph& g) : g_(g), d_(g.regularity())
    {
        full_ = ((1u << d_) - 1) << 1;
        parent_.resize(g.order());
        size_.resize(g.order());
    }

    int colours() const { return d_; }

    /// Root state: vertex 0 precoloured.  Returns nullopt if already contradictory.
    std::optional<std::vector<Colour>> root() const
    {
        std::vector<Colour> c(g_.size(), 0);
        auto inc = g_.incident(0);
        for (int i = 0; i < d_; ++i)
            c[inc[i]] = static_cast<Colour>(i + 1);
        return c;
    }

    /// Explores below `start`, calling leaf(colours) for complete colourings
    /// and, at `cut_depth` decisions below start, frontier(colours) instead of
    /// descending.  Either callback may return false to abandon the search.
    template <class Leaf, class Frontier>
    bool explore(const std::vector<Colour>& start, int cut_depth, Leaf&& leaf, Frontier&& frontier,
                 const std::atomic<bool>* cancel = nullptr)
    {
        colours_ = start;
        used_.assign(g_.order(), 0);
        uncoloured_ = 0;
        for (EdgeId e = 0; e < g_.size(); ++e) {
            if (!colours_[e]) {
                ++uncoloured_;
                continue;
            }
            auto [u, v] = g_.edge(e);
            unsigned bit = 1u << colours_[e];
            if ((used_[u] & bit) || (used_[v] & bit))
                return true;
            used_[u] |= bit;
            used_[v] |= bit;
        }
        cancel_ = cancel;
        return recurse(0, cut_depth, leaf, frontier);
    }

private:
    unsigned missing(Vertex v) const { return full_ & ~used_[v]; }

    Vertex find(Vertex v)
    {
        while (parent_[v] != v)
            v = parent_[v] = parent_[parent_[v]];
        return v;
    }

    /// Every colour class must still be completable to a perfect matching:
    /// each component of the graph of edges that could take colour i, on
    /// vertices still missing i, needs an even vertex count.
    bool parity_ok()
    {
        for (int i = 1; i <= d_; ++i) {
            unsigned bit = 1u << i;
            for (Vertex v = 0; v < g_.order(); ++v) {
                parent_[v] = v;
                size_[v] = (missing(v) & bit) ? 1 : 0;
            }
            for (EdgeId e = 0; e < g_.size(); ++e) {
                if (colours_[e])
                    continue;
                auto [u, v] = g_.edge(e);
                if (!(missing(u) & missing(v) & bit))
                    continue;
                Vertex a = find(u), b = find(v);
                if (a != b) {
                    parent_[a] = b;
                    size_[b] += size_[a];
                }
            }
            for (Vertex v = 0; v < g_.order(); ++v)
                if (parent_[v] == v && (size_[v] & 1))
                    return false;
        }
        return true;
    }

    template <class Leaf, class Frontier>
    bool recurse(int depth, int cut_depth, Leaf& leaf, Frontier& frontier)
    {
        if (cancel_ && cancel_->load(std::memory_order_relaxed))
            return false;
        if (uncoloured_ == 0)
            return leaf(static_cast<const std::vector<Colour>&>(colours_));
        // most constrained uncoloured edge, least EdgeId on ties
        EdgeId pick = -1;
        int pick_count = std::numeric_limits<int>::max();
        unsigned pick_mask = 0;
        for (EdgeId e = 0; e < g_.size(); ++e) {
            if (colours_[e])
                continue;
            auto [u, v] = g_.edge(e);
            unsigned m = missing(u) & missing(v);
            int cnt = __builtin_popcount(m);
            if (cnt == 0)
                return true;
            if (cnt < pick_count) {
                pick = e;
                pick_count = cnt;
                pick_mask = m;
            }
        }
        if (!parity_ok())
            return true;
        if (depth == cut_depth)
            return frontier(static_cast<const std::vector<Colour>&>(colours_));
        auto [u, v] = g_.edge(pick);
        for (int c = 1; c <= d_; ++c) {
            unsigned bit = 1u << c;
            if (!(pick_mask & bit))
                continue;
            colours_[pick] = static_cast<Colour>(c);
            used_[u] |= bit;
            used_[v] |= bit;
            --uncoloured_;
            bool go_on = recurse(depth + 1, cut_depth, leaf, frontier);
            ++uncoloured_;
            used_[u] &= ~bit;
            used_[v] &= ~bit;
            colours_[pick] = 0;
            if (!go_on)
                return false;
        }
        return true;
    }

    const Graph& g_;
    int d_;
    unsigned full_ = 0;
    std::vector<Colour> colours_;
    std::vector<unsigned> used_;
    std::vector<Vertex> parent_;
    std::vector<int> size_;
    int uncoloured_ = 0;
    const std::atomic<bool>* cancel_ = nullptr;
};

inline EnumerationStatus check_enumerable(const Graph& g)
{
    int d = g.regularity();
    if (d < 1)
        return EnumerationStatus::not_regular;
    if (d > max_colours)
        throw error("degree above the supported colour count");
    if (g.order() % 2)
        return EnumerationStatus::odd_order;
    if (!is_connected(g))
        return EnumerationStatus::disconnected;
    return EnumerationStatus::not_run;
}

}  // namespace detail

/// Per-task results of a parallel fold, in depth-first task order.
template <class State>
struct FoldResult {
    EnumerationStatus status = EnumerationStatus::not_run;
    std::vector<State> parts;
    std::uint64_t leaves = 0;  ///< colourings visited
};

/// Folds visit(state, colours) over every 1-factorisation of g.
///
/// The search tree is cut at a fixed depth into tasks, each with its own
/// State; tasks are handed to `jobs` threads and the parts come back in
/// task order, so the combined result does not depend on the thread count.
/// If visit returns false in some task, tasks after it are abandoned and
/// tasks before it run to completion.
template <class State, class Visit>
FoldResult<State> fold_factorisations(const Graph& g, const EnumerationOptions& opt, Visit&& visit)
{
    FoldResult<State> result;
    result.status = detail::check_enumerable(g);
    if (result.status != EnumerationStatus::not_run)
        return result;

    detail::factorisation_search root_search(g);
    std::vector<Colour> root = *root_search.root();

    int jobs = std::max(1, opt.jobs);
    std::vector<std::vector<Colour>> tasks;
    if (jobs == 1 && opt.split_depth < 0) {
        tasks.push_back(root);
    } else {
        int depth = opt.split_depth;
        std::size_t want = static_cast<std::size_t>(jobs) * 16;
        for (int dd = (depth < 0 ? 1 : depth);; ++dd) {
            tasks.clear();
            // colourings complete above the cut become single-leaf tasks
            root_search.explore(
                root, dd,
                [&](const std::vector<Colour>& c) {
                    tasks.push_back(c);
                    return true;
                },
                [&](const std::vector<Colour>& c) {
                    tasks.push_back(c);
                    return true;
                });
            if (depth >= 0 || tasks.size() >= want || dd >= 24)
                break;
        }
    }

    result.parts.assign(tasks.size(), State{});
    std::vector<std::uint64_t> leaves(tasks.size(), 0);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> stop_at{tasks.size()};
    std::vector<std::unique_ptr<std::atomic<bool>>> cancel;
    for (std::size_t i = 0; i < tasks.size(); ++i)
        cancel.push_back(std::make_unique<std::atomic<bool>>(false));

    auto worker = [&]() {
        detail::factorisation_search search(g);
        while (true) {
            std::size_t t = next.fetch_add(1);
            if (t >= tasks.size() || t > stop_at.load())
                break;
            State& state = result.parts[t];
            search.explore(
                tasks[t], -1,
                [&](const std::vector<Colour>& c) {
                    ++leaves[t];
                    if (!visit(state, c)) {
                        std::size_t cur = stop_at.load();
                        while (t < cur && !stop_at.compare_exchange_weak(cur, t)) {
                        }
                        for (std::size_t j = t + 1; j < tasks.size(); ++j)
                            cancel[j]->store(true);
                        return false;
                    }
                    return true;
                },
                [](const std::vector<Colour>&) { return true; }, cancel[t].get());
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < jobs; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    std::size_t stop = stop_at.load();
    if (stop < tasks.size())
        result.parts.resize(stop + 1);
    for (std::size_t t = 0; t < result.parts.size(); ++t)
        result.leaves += leaves[t];
    if (stop < tasks.size())
        result.status = EnumerationStatus::stopped;
    else
        result.status = result.leaves ? EnumerationStatus::complete : EnumerationStatus::no_colouring;
    return result;
}

/// Sequential stream of canonical 1-factorisations in depth-first order.
template <class Visit>
EnumerationStatus for_each_factorisation(const Graph& g, Visit&& visit)
{
    struct none {};
    auto r = fold_factorisations<none>(g, EnumerationOptions{}, [&](none&, const std::vector<Colour>& c) {
        return visit(c);
    });
    return r.status;
}

struct FactorisationList {
    EnumerationStatus status = EnumerationStatus::not_run;
    std::vector<EdgeColouring> colourings;
};

/// All 1-factorisations up to colour permutation (at most `limit` when nonzero).
inline FactorisationList enumerate_factorisations(const Graph& g, const EnumerationOptions& opt = {},
                                                  std::size_t limit = 0)
{
    FactorisationList out;
    auto shared = std::make_shared<const Graph>(g);
    int d = g.regularity();
    if (limit) {
        out.status = for_each_factorisation(g, [&](const std::vector<Colour>& c) {
            out.colourings.emplace_back(shared, c, d);
            return out.colourings.size() < limit;
        });
        return out;
    }
    auto r = fold_factorisations<std::vector<std::vector<Colour>>>(
        g, opt, [](std::vector<std::vector<Colour>>& part, const std::vector<Colour>& c) {
            part.push_back(c);
            return true;
        });
    out.status = r.status;
    for (auto& part : r.parts)
        for (auto& c : part)
            out.colourings.emplace_back(shared, std::move(c), d);
    return out;
}

struct SpectrumReport {
    EnumerationStatus status = EnumerationStatus::not_run;
    std::uint64_t total = 0;                    ///< distinct 1-factorisations
    std::map<int, std::uint64_t> counts;        ///< colourings per perfect-pair count
    std::map<int, EdgeColouring> witnesses;     ///< first colouring (depth-first order) per count

    std::vector<int> spectrum() const
    {
        std::vector<int> out;
        for (auto& [k, n] : counts)
            if (n)
                out.push_back(k);
        return out;
    }
};

inline SpectrumReport spectrum(const Graph& g, const EnumerationOptions& opt = {})
{
    struct part {
        std::uint64_t total = 0;
        std::map<int, std::uint64_t> counts;
        std::map<int, std::vector<Colour>> first;
        colour_table table;
    };
    int d = g.regularity();
    auto r = fold_factorisations<part>(g, opt, [&](part& p, const std::vector<Colour>& c) {
        p.table.assign(g, c, d);
        int k = perfect_pair_count(p.table, d);
        ++p.total;
        ++p.counts[k];
        if (!p.first.count(k))
            p.first.emplace(k, c);
        return true;
    });
    SpectrumReport rep;
    rep.status = r.status;
    auto shared = std::make_shared<const Graph>(g);
    for (auto& p : r.parts) {
        rep.total += p.total;
        for (auto& [k, n] : p.counts)
            rep.counts[k] += n;
        for (auto& [k, c] : p.first)
            if (!rep.witnesses.count(k))
                rep.witnesses.emplace(k, EdgeColouring(shared, c, d));
    }
    return rep;
}

struct PerfectlyHamiltonianResult {
    EnumerationStatus status = EnumerationStatus::not_run;
    bool perfectly_hamiltonian = false;
    std::optional<EdgeColouring> witness;
};

/// Stops at the first colouring (in depth-first order) whose pairs are all perfect.
inline PerfectlyHamiltonianResult is_perfectly_hamiltonian(const Graph& g, const EnumerationOptions& opt = {})
{
    int d = g.regularity();
    struct part {
        std::optional<std::vector<Colour>> found;
        colour_table table;
    };
    auto r = fold_factorisations<part>(g, opt, [&](part& p, const std::vector<Colour>& c) {
        p.table.assign(g, c, d);
        if (perfect_pair_count(p.table, d) == d * (d - 1) / 2) {
            p.found = c;
            return false;
        }
        return true;
    });
    PerfectlyHamiltonianResult out;
    out.status = r.status;
    for (auto& p : r.parts)
        if (p.found) {
            out.perfectly_hamiltonian = true;
            out.witness = EdgeColouring(std::make_shared<const Graph>(g), *p.found, d);
            break;
        }
    return out;
}

}  // namespace pfact
