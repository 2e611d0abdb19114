#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pfact/graph.hpp"

namespace pfact {

/// Canonical labelling: `labelling[v]` is the canonical position of v and
/// `certificate` the sorted edge list of the relabelled graph.
struct CanonicalForm {
    std::vector<Vertex> labelling;
    std::vector<std::pair<Vertex, Vertex>> certificate;
};

namespace detail {

/// Ordered partition refined to equitability.  Cells are kept in a
/// deterministic order so that isomorphic inputs refine identically.
class refiner {
public:
    explicit refiner(const Graph& g) : g_(g) {}

    using partition = std::vector<std::vector<Vertex>>;

    void refine(partition& p) const
    {
        int n = g_.order();
        std::vector<int> cell_of(n);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t c = 0; c < p.size(); ++c)
                for (Vertex v : p[c])
                    cell_of[v] = static_cast<int>(c);
            partition next;
            for (auto& cell : p) {
                if (cell.size() == 1) {
                    next.push_back(cell);
                    continue;
                }
                // signature: sorted multiset of neighbour cell indices
                std::vector<std::pair<std::vector<int>, Vertex>> sig;
                for (Vertex v : cell) {
                    std::vector<int> s;
                    for (Vertex w : g_.neighbours(v))
                        s.push_back(cell_of[w]);
                    std::sort(s.begin(), s.end());
                    sig.emplace_back(std::move(s), v);
                }
                std::sort(sig.begin(), sig.end());
                std::size_t before = next.size();
                std::size_t start = 0;
                for (std::size_t i = 1; i <= sig.size(); ++i)
                    if (i == sig.size() || sig[i].first != sig[start].first) {
                        std::vector<Vertex> part;
                        for (std::size_t j = start; j < i; ++j)
                            part.push_back(sig[j].second);
                        std::sort(part.begin(), part.end());
                        next.push_back(std::move(part));
                        start = i;
                    }
                if (next.size() - before > 1)
                    changed = true;
            }
            p = std::move(next);
        }
    }

private:
    const Graph& g_;
};

/// Individualisation-refinement search keeping the least leaf certificate.
class canoniser {
public:
    explicit canoniser(const Graph& g) : g_(g), refiner_(g) {}

    CanonicalForm run()
    {
        refiner::partition p;
        // initial partition by degree
        std::map<int, std::vector<Vertex>> by_degree;
        for (Vertex v = 0; v < g_.order(); ++v)
            by_degree[g_.degree(v)].push_back(v);
        for (auto& [d, cell] : by_degree)
            p.push_back(cell);
        refiner_.refine(p);
        search(p);
        return best_;
    }

private:
    void search(const refiner::partition& p)
    {
        auto target = std::find_if(p.begin(), p.end(), [](auto& c) { return c.size() > 1; });
        if (target == p.end()) {
            leaf(p);
            return;
        }
        std::size_t idx = target - p.begin();
        for (Vertex v : p[idx]) {
            refiner::partition q;
            for (std::size_t c = 0; c < p.size(); ++c) {
                if (c != idx) {
                    q.push_back(p[c]);
                    continue;
                }
                q.push_back({v});
                std::vector<Vertex> rest;
                for (Vertex w : p[c])
                    if (w != v)
                        rest.push_back(w);
                q.push_back(std::move(rest));
            }
            refiner_.refine(q);
            search(q);
        }
    }

    void leaf(const refiner::partition& p)
    {
        std::vector<Vertex> lab(g_.order());
        for (std::size_t c = 0; c < p.size(); ++c)
            lab[p[c][0]] = static_cast<Vertex>(c);
        std::vector<std::pair<Vertex, Vertex>> cert;
        cert.reserve(g_.size());
        for (auto& e : g_.edges()) {
            Vertex a = lab[e.u], b = lab[e.v];
            cert.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(cert.begin(), cert.end());
        if (!have_ || cert < best_.certificate) {
            best_.certificate = std::move(cert);
            best_.labelling = std::move(lab);
            have_ = true;
        }
    }

    const Graph& g_;
    refiner refiner_;
    CanonicalForm best_;
    bool have_ = false;
};

}  // namespace detail

inline CanonicalForm canonical_form(const Graph& g) { return detail::canoniser(g).run(); }

/// True when perm maps g onto h edge-for-edge.
inline bool is_isomorphism(const Graph& g, const Graph& h, const std::vector<Vertex>& perm)
{
    if (g.order() != h.order() || g.size() != h.size() || static_cast<int>(perm.size()) != g.order())
        return false;
    std::vector<char> hit(h.order(), 0);
    for (Vertex v : perm) {
        if (v < 0 || v >= h.order() || hit[v])
            return false;
        hit[v] = 1;
    }
    for (auto& e : g.edges())
        if (!h.adjacent(perm[e.u], perm[e.v]))
            return false;
    return true;
}

struct IsomorphismResult {
    bool isomorphic = false;
    std::vector<Vertex> witness;  ///< g-vertex -> h-vertex, verified when isomorphic
};

inline IsomorphismResult is_isomorphic(const Graph& g, const Graph& h)
{
    IsomorphismResult r;
    if (g.order() != h.order() || g.size() != h.size())
        return r;
    std::vector<int> dg, dh;
    for (Vertex v = 0; v < g.order(); ++v) {
        dg.push_back(g.degree(v));
        dh.push_back(h.degree(v));
    }
    std::sort(dg.begin(), dg.end());
    std::sort(dh.begin(), dh.end());
    if (dg != dh)
        return r;
    CanonicalForm cg = canonical_form(g), ch = canonical_form(h);
    if (cg.certificate != ch.certificate)
        return r;
    std::vector<Vertex> inverse_h(h.order());
    for (Vertex v = 0; v < h.order(); ++v)
        inverse_h[ch.labelling[v]] = v;
    r.witness.resize(g.order());
    for (Vertex v = 0; v < g.order(); ++v)
        r.witness[v] = inverse_h[cg.labelling[v]];
    if (!is_isomorphism(g, h, r.witness))
        throw error("internal error: canonical labelling produced an invalid witness");
    r.isomorphic = true;
    return r;
}

}  // namespace pfact
