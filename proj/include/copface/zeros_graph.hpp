#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "copface/copositive.hpp"
#include "copface/error.hpp"
#include "copface/index_set.hpp"
#include "copface/linalg.hpp"
#include "copface/zeros.hpp"

namespace copface {

/// Minimal-zeros graph: vertex j is the j-th catalog zero; (i, j), i < j, is an
/// edge iff (tau^i)^T A tau^j vanishes.
struct ZerosGraph {
    Index vertex_count = 0;
    std::vector<std::pair<Index, Index>> edges;

    bool adjacent(Index i, Index j) const {
        if (i > j) std::swap(i, j);
        return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
    }

    std::vector<std::vector<bool>> adjacency() const {
        std::vector<std::vector<bool>> adj(static_cast<std::size_t>(vertex_count),
                                           std::vector<bool>(static_cast<std::size_t>(vertex_count), false));
        for (auto [i, j] : edges) adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = true;
        return adj;
    }
};

inline ZerosGraph build_graph(const MinimalZeroCatalog& cat, const TolerancePolicy& tol = {}) {
    ZerosGraph g;
    g.vertex_count = static_cast<Index>(cat.size());
    const double thr = tol.scaled_zero(cat.matrix.spectral_norm());
    for (Index i = 0; i < g.vertex_count; ++i)
        for (Index j = i + 1; j < g.vertex_count; ++j)
            if (bilinear_form(cat.matrix, cat[static_cast<std::size_t>(i)].vec, cat[static_cast<std::size_t>(j)].vec) <= thr)
                g.edges.emplace_back(i, j);
    return g;
}

namespace detail {

// Bron-Kerbosch with Tomita pivoting.
inline void bron_kerbosch(const std::vector<std::vector<bool>>& adj, std::vector<Index>& r, std::vector<Index> p,
                          std::vector<Index> x, std::vector<IndexSet>& out) {
    if (p.empty() && x.empty()) {
        out.emplace_back(r);
        return;
    }
    Index pivot = -1;
    std::size_t best = 0;
    for (const auto* pool : {&p, &x})
        for (Index u : *pool) {
            std::size_t cnt = 0;
            for (Index v : p) cnt += adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] ? 1u : 0u;
            if (pivot < 0 || cnt > best) {
                pivot = u;
                best = cnt;
            }
        }
    std::vector<Index> candidates;
    for (Index v : p)
        if (!adj[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(v)]) candidates.push_back(v);
    for (Index v : candidates) {
        std::vector<Index> np, nx;
        for (Index w : p)
            if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]) np.push_back(w);
        for (Index w : x)
            if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]) nx.push_back(w);
        r.push_back(v);
        bron_kerbosch(adj, r, std::move(np), std::move(nx), out);
        r.pop_back();
        p.erase(std::find(p.begin(), p.end(), v));
        x.push_back(v);
    }
}

} // namespace detail

/// All distinct maximal cliques, each sorted, listed in lexicographic order.
inline std::vector<IndexSet> maximal_cliques(const ZerosGraph& g) {
    std::vector<IndexSet> out;
    if (g.vertex_count == 0) return out;
    const auto adj = g.adjacency();
    std::vector<Index> r, p(static_cast<std::size_t>(g.vertex_count));
    for (Index i = 0; i < g.vertex_count; ++i) p[static_cast<std::size_t>(i)] = i;
    detail::bron_kerbosch(adj, r, std::move(p), {}, out);
    std::sort(out.begin(), out.end());
    return out;
}

/// Maximal cliques J(s) of the minimal-zeros graph together with the support
/// unions P*(s) and the sums t(s) of the member zeros.
struct CliqueCover {
    MinimalZeroCatalog catalog;
    ZerosGraph graph;
    std::vector<IndexSet> cliques;
    std::vector<IndexSet> p_star;
    std::vector<Vector> t_s;
    TolerancePolicy tol;

    std::size_t size() const { return cliques.size(); }
};

inline CliqueCover build_clique_cover(const MinimalZeroCatalog& cat, const TolerancePolicy& tol = {}) {
    CliqueCover cover{cat, build_graph(cat, tol), {}, {}, {}, tol};
    cover.cliques = maximal_cliques(cover.graph);
    for (const IndexSet& c : cover.cliques) {
        IndexSet p;
        Vector t = Vector::Zero(cat.matrix.order());
        for (Index j : c) {
            p = p.united(cat[static_cast<std::size_t>(j)].support);
            t += cat[static_cast<std::size_t>(j)].vec;
        }
        cover.p_star.push_back(std::move(p));
        cover.t_s.push_back(std::move(t));
    }
    return cover;
}

/// Z(A) = union of conv{tau^j : j in J(s)}: membership via nonnegative least
/// squares per clique, accepted when the fit residual is <= 1e-8 in max-norm.
inline bool zero_set_contains(const CliqueCover& cover, const NormalizedZero& t) {
    const Index n = cover.catalog.matrix.order();
    if (t.dimension() != n) throw DimensionMismatch("zero_set_contains: vector length does not match order");
    for (std::size_t s = 0; s < cover.cliques.size(); ++s) {
        if (!t.support.is_subset_of(cover.p_star[s])) continue;
        const IndexSet& members = cover.cliques[s];
        Matrix hull(n, static_cast<Index>(members.size()));
        for (std::size_t k = 0; k < members.size(); ++k)
            hull.col(static_cast<Index>(k)) = cover.catalog[static_cast<std::size_t>(members[k])].vec;
        const NnlsResult fit = nnls(hull, t.vec);
        if ((hull * fit.x - t.vec).cwiseAbs().maxCoeff() <= 1e-8) return true;
    }
    return false;
}

/// S(tau) = {s : supp(tau) is contained in P*(s)}.
inline std::vector<Index> s_of_tau(const CliqueCover& cover, const NormalizedZero& tau) {
    if (!verify_zero(cover.catalog.matrix, tau, cover.tol))
        throw PreconditionError("s_of_tau: vector is not a zero of the matrix");
    std::vector<Index> out;
    for (std::size_t s = 0; s < cover.p_star.size(); ++s)
        if (tau.support.is_subset_of(cover.p_star[s])) out.push_back(static_cast<Index>(s));
    if (out.empty())
        throw InternalConsistencyError("s_of_tau: zero " + tau.support.to_string() +
                                       " is not covered by any clique; the catalog is incomplete");
    return out;
}

/// The index set J(tau, A): union of P*(s) over s in S(tau).
inline IndexSet j_set(const CliqueCover& cover, const NormalizedZero& tau) {
    IndexSet out;
    for (Index s : s_of_tau(cover, tau)) out = out.united(cover.p_star[static_cast<std::size_t>(s)]);
    return out;
}

struct MSets {
    IndexSet m;       // [n] \ supp(A tau^j)
    IndexSet m_star;  // union of P*(s) over cliques containing j
};

inline MSets m_sets(const MinimalZeroCatalog& cat, const CliqueCover& cover, Index j, const TolerancePolicy& tol = {}) {
    if (j < 0 || static_cast<std::size_t>(j) >= cat.size())
        throw PreconditionError("m_sets: zero index " + std::to_string(j + 1) + " out of range");
    MSets out;
    out.m = m_set(cat.matrix, cat[static_cast<std::size_t>(j)].vec, tol);
    for (std::size_t s = 0; s < cover.cliques.size(); ++s)
        if (cover.cliques[s].contains(j)) out.m_star = out.m_star.united(cover.p_star[s]);
    return out;
}

} // namespace copface
