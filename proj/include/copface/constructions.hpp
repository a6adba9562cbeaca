#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "copface/copositive.hpp"
#include "copface/error.hpp"
#include "copface/face_geometry.hpp"
#include "copface/index_set.hpp"
#include "copface/linalg.hpp"
#include "copface/sym_matrix.hpp"
#include "copface/zeros.hpp"
#include "copface/zeros_graph.hpp"

namespace copface {

// ---------------------------------------------------------------------------
// Odd-order circulant family

struct HildebrandParams {
    Index n = 0;
    double alpha = 0.0;
    double beta = 0.0;

    static HildebrandParams for_order(Index n) {
        if (n < 5 || n % 2 == 0)
            throw PreconditionError("circulant construction needs an odd order n >= 5, got " + std::to_string(n));
        const double a = std::numbers::pi / static_cast<double>(n + 1);
        return {n, 2.0 * (1.0 + 2.0 * std::cos(a) * std::cos(3.0 * a)), -2.0 * (std::cos(a) + std::cos(3.0 * a))};
    }

    /// alpha + 2 beta + 2 minus its closed form 4(1 - cos a)(1 - cos 3a).
    double identity_residual() const {
        const double a = std::numbers::pi / static_cast<double>(n + 1);
        return alpha + 2.0 * beta + 2.0 - 4.0 * (1.0 - std::cos(a)) * (1.0 - std::cos(3.0 * a));
    }
};

/// Circulant with alpha on the diagonal, beta at cyclic distance 1, 1 at cyclic distance 2, 0 elsewhere.
inline std::pair<SymMatrix, HildebrandParams> build_circulant(Index n) {
    const HildebrandParams p = HildebrandParams::for_order(n);
    Matrix m = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            const Index d = std::min((i - j + n) % n, (j - i + n) % n);
            m(i, j) = d == 0 ? p.alpha : d == 1 ? p.beta : d == 2 ? 1.0 : 0.0;
        }
    return {SymMatrix(m), p};
}

/// I(1), ..., I(n) as cyclic runs of n - 2 consecutive indices: I(i) omits
/// {n-i, n-i+1} (1-based) and I(n) omits {1, n}. Each run starts right after
/// the omitted pair, so the k-th element of run i is where u_k goes.
inline std::vector<std::vector<Index>> circulant_index_runs(Index n) {
    if (n < 5 || n % 2 == 0) throw PreconditionError("index sets need an odd order n >= 5");
    std::vector<std::vector<Index>> runs;
    for (Index i = 1; i <= n; ++i) {
        // 0-based position of the second omitted index.
        const Index last_omitted = i < n ? (n - i + 1) - 1 : 0;
        std::vector<Index> run;
        for (Index k = 1; k <= n - 2; ++k) run.push_back((last_omitted + k) % n);
        runs.push_back(std::move(run));
    }
    return runs;
}

inline std::vector<IndexSet> index_sets(Index n) {
    std::vector<IndexSet> out;
    for (auto& run : circulant_index_runs(n)) out.emplace_back(run);
    return out;
}

struct PalindromicKernelVector {
    Vector u;
    double palindrome_residual = 0.0;
};

/// Spans ker A_{I(1)}, normalized to unit sum; checks positivity, palindromicity
/// and that the same vector spans ker A_{I(j)} for every j along the cyclic run.
inline PalindromicKernelVector palindromic_u(const SymMatrix& a, const TolerancePolicy& tol = {}) {
    const Index n = a.order();
    const auto runs = circulant_index_runs(n);
    const double kthr = tol.rank_tol_rel * a.spectral_norm();
    std::vector<Index> first = runs.front();
    const NullSpace ns = null_space(principal_submatrix(a, std::span<const Index>(first)).dense(), kthr);
    if (ns.basis.cols() != 1)
        throw ConstructionFailure("palindromic_u: kernel of the leading (n-2)-block has dimension " +
                                  std::to_string(ns.basis.cols()) + ", expected 1");
    Vector u = ns.basis.col(0);
    if (u.sum() < 0.0) u = -u;
    u /= u.sum();
    if (u.minCoeff() <= 10.0 * tol.zero_tol * u.cwiseAbs().maxCoeff())
        throw ConstructionFailure("palindromic_u: kernel vector is not strictly positive");
    double pal = 0.0;
    for (Index k = 0; k < u.size(); ++k) pal = std::max(pal, std::abs(u(k) - u(u.size() - 1 - k)));
    if (pal > 1e-10) throw ConstructionFailure("palindromic_u: kernel vector is not palindromic");

    for (const auto& run : runs) {
        Matrix sub(n - 2, n - 2);
        for (Index r = 0; r < n - 2; ++r)
            for (Index c = 0; c < n - 2; ++c) sub(r, c) = a(run[static_cast<std::size_t>(r)], run[static_cast<std::size_t>(c)]);
        const NullSpace nsj = null_space(sub, kthr);
        if (nsj.basis.cols() != 1 || (sub * u).norm() > 10.0 * tol.zero_tol * std::max(1.0, a.spectral_norm()))
            throw ConstructionFailure("palindromic_u: u does not span the kernel of every cyclic block");
    }
    return {u, pal};
}

/// The n minimal zeros tau^j (supp = I(j), values u along the run), sorted by
/// support. Cross-checked against direct enumeration.
inline MinimalZeroCatalog circulant_minimal_zeros(Index n, const TolerancePolicy& tol = {}) {
    const auto [a, params] = build_circulant(n);
    const PalindromicKernelVector pu = palindromic_u(a, tol);
    MinimalZeroCatalog cat{a, {}, true};
    for (const auto& run : circulant_index_runs(n)) {
        Vector t = Vector::Zero(n);
        for (std::size_t k = 0; k < run.size(); ++k) t(run[k]) = pu.u(static_cast<Index>(k));
        cat.zeros.push_back(NormalizedZero::from_vector(t, tol));
    }
    cat.sort_by_support();

    const MinimalZeroCatalog enumerated = enumerate_minimal_zeros(a, tol);
    bool same = enumerated.complete && enumerated.size() == cat.size();
    for (std::size_t j = 0; same && j < cat.size(); ++j)
        same = enumerated[j].support == cat[j].support &&
               (enumerated[j].vec - cat[j].vec).cwiseAbs().maxCoeff() <= 1e-8;
    if (!same) throw ConstructionFailure("circulant_minimal_zeros: constructed zeros disagree with enumeration");
    return cat;
}

// ---------------------------------------------------------------------------
// Order-raising lift

/// [[A, A a],[a^T A, a^T A a]] for a nonnegative a. Zero-catalog automation is
/// provided only for indicator vectors, see build_lift.
inline SymMatrix lift_matrix(const SymMatrix& a, const Vector& a_star) {
    const Index n = a.order();
    if (a_star.size() != n) throw DimensionMismatch("lift_matrix: vector length does not match order");
    if (a_star.minCoeff() < 0.0) throw PreconditionError("lift_matrix: lifting vector must be nonnegative");
    Matrix b(n + 1, n + 1);
    const Vector col = a.dense() * a_star;
    b.topLeftCorner(n, n) = a.dense();
    b.topRightCorner(n, 1) = col;
    b.bottomLeftCorner(1, n) = col.transpose();
    b(n, n) = a_star.dot(col);
    return SymMatrix(b);
}

inline Vector indicator(Index n, const IndexSet& set) {
    Vector e = Vector::Zero(n);
    for (Index i : set) e(i) = 1.0;
    return e;
}

struct LiftCoefficients {
    double sigma = 0.0;
    double mu = 0.0;
};

/// sigma = min_{k in I} tau_k, mu = 1 - sigma (|I| - 1). For a unit-sum tau
/// with I inside its support mu >= sigma > 0, so the error only fires on
/// inputs that are not normalized zeros.
inline LiftCoefficients lift_coefficients(const Vector& tau, const IndexSet& set, const TolerancePolicy& tol = {}) {
    if (set.empty()) throw PreconditionError("lift: index set must be nonempty");
    double sigma = std::numeric_limits<double>::infinity();
    for (Index k : set) sigma = std::min(sigma, tau(k));
    const double mu = 1.0 - sigma * static_cast<double>(set.size() - 1);
    if (!(sigma > tol.zero_tol)) throw PreconditionError("lift: sigma is not positive; I is not inside the support");
    if (!(mu > tol.zero_tol))
        throw PreconditionError("lift: mu = " + std::to_string(mu) + " is not positive; the lifted zero is undefined");
    return {sigma, mu};
}

struct LiftResult {
    SymMatrix base;
    IndexSet index_set;
    SymMatrix lifted;
    Vector e_star;
    IndexSet j0;                   // 0-based catalog indices of the base zeros
    std::map<Index, double> sigma;  // j in J0
    std::map<Index, double> mu;     // j in J0
    MinimalZeroCatalog lifted_catalog;
    /// Position in lifted_catalog of (tau^j; 0), for every base j.
    std::vector<Index> tau_bar_index;
    /// Position in lifted_catalog of y^j, for j in J0.
    std::map<Index, Index> y_bar_index;
    /// Expected graph edges of the lifted matrix: the (tau-bar, y-bar) pairs, i < j.
    std::vector<std::pair<Index, Index>> expected_edges;
};

/// B(A, I) with its minimal zeros (tau^j; 0) for all j and
/// y^j = (tau^j - sigma_j e*; sigma_j) / mu_j for j in J0 = {j : I inside supp tau^j}.
///
/// Requires a complete base catalog whose minimal-zeros graph has no edges,
/// i.e. every zero of A is a multiple of a minimal one.
inline LiftResult build_lift(const SymMatrix& a, const MinimalZeroCatalog& cat, const IndexSet& set,
                             const TolerancePolicy& tol = {}) {
    const Index n = a.order();
    if (set.empty()) throw PreconditionError("build_lift: index set must be nonempty");
    if (set.items().front() < 0 || set.items().back() >= n)
        throw PreconditionError("build_lift: index set " + set.to_string() + " is out of range for order " +
                                std::to_string(n));
    if (cat.matrix.order() != n || (cat.matrix.dense() - a.dense()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, a.spectral_norm()))
        throw PreconditionError("build_lift: catalog was enumerated for a different matrix");
    if (!cat.complete) throw PreconditionError("build_lift: base catalog is incomplete (complete flag false)");
    if (!build_graph(cat, tol).edges.empty())
        throw PreconditionError("build_lift: base zero set is not the set of minimal zeros (its graph has edges)");

    LiftResult res{a, set, lift_matrix(a, indicator(n, set)), indicator(n, set), {}, {}, {}, MinimalZeroCatalog{a, {}, true}, {}, {}, {}};
    const SymMatrix& b = res.lifted;
    std::vector<Index> j0;
    std::vector<NormalizedZero> raw;
    std::vector<std::pair<Index, int>> origin;  // (base j, 0 for tau-bar, 1 for y-bar)
    for (std::size_t j = 0; j < cat.size(); ++j) {
        const Vector& tau = cat[j].vec;
        Vector tb = Vector::Zero(n + 1);
        tb.head(n) = tau;
        raw.push_back(NormalizedZero::from_vector(tb, tol));
        origin.emplace_back(static_cast<Index>(j), 0);
        if (!set.is_subset_of(cat[j].support)) continue;
        const LiftCoefficients c = lift_coefficients(tau, set, tol);
        j0.push_back(static_cast<Index>(j));
        res.sigma[static_cast<Index>(j)] = c.sigma;
        res.mu[static_cast<Index>(j)] = c.mu;
        Vector y(n + 1);
        y.head(n) = (tau - c.sigma * res.e_star) / c.mu;
        y(n) = c.sigma / c.mu;
        // Entries that cancel exactly (tau_k = sigma) are rounding noise.
        for (Index k = 0; k < n; ++k)
            if (std::abs(y(k)) <= tol.zero_tol) y(k) = 0.0;
        raw.push_back(NormalizedZero::from_vector(y, tol));
        origin.emplace_back(static_cast<Index>(j), 1);
    }
    res.j0 = IndexSet(j0);

    for (const auto& z : raw)
        if (!verify_zero(b, z, tol))
            throw ConstructionFailure("build_lift: lifted vector with support " + z.support.to_string() +
                                      " is not a zero of B");

    std::vector<std::size_t> order(raw.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return raw[x].support < raw[y].support; });
    res.lifted_catalog = MinimalZeroCatalog{b, {}, true};
    res.tau_bar_index.assign(cat.size(), -1);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const auto [j, kind] = origin[order[pos]];
        res.lifted_catalog.zeros.push_back(raw[order[pos]]);
        if (kind == 0)
            res.tau_bar_index[static_cast<std::size_t>(j)] = static_cast<Index>(pos);
        else
            res.y_bar_index[j] = static_cast<Index>(pos);
    }
    for (auto [j, y] : res.y_bar_index) {
        const Index t = res.tau_bar_index[static_cast<std::size_t>(j)];
        res.expected_edges.emplace_back(std::min(t, y), std::max(t, y));
    }
    std::sort(res.expected_edges.begin(), res.expected_edges.end());
    return res;
}

struct LiftHypotheses {
    bool complete_and_minimal = false;   // a) Z(A) = Z_min(A), nonempty
    bool support_cover = false;          // b) supp(tau^j) and supp(A tau^j) cover [n] for every j
    bool extreme = false;                // c) A certified extreme
    bool j0_support_cover = false;       // d) union over J0 of supp(tau^j) = [n]
    bool j0_m_cover = false;             // union over J0 of M(j) = [n]

    bool all() const { return complete_and_minimal && support_cover && extreme && j0_support_cover; }
};

inline LiftHypotheses check_lift_hypotheses(const LiftResult& lift, const MinimalZeroCatalog& cat,
                                            const TolerancePolicy& tol = {}) {
    LiftHypotheses h;
    const SymMatrix& a = lift.base;
    const Index n = a.order();
    const IndexSet all = IndexSet::range(n);
    h.complete_and_minimal = cat.complete && !cat.empty() && build_graph(cat, tol).edges.empty();
    h.support_cover = !cat.empty();
    for (const auto& z : cat.zeros)
        if (z.support.united(image_support(a, z.vec, tol)) != all) h.support_cover = false;
    try {
        h.extreme = certify_extreme(a, cat, tol).extreme;
    } catch (const Error&) {
        h.extreme = false;
    }
    IndexSet supp_union, m_union;
    for (Index j : lift.j0) {
        supp_union = supp_union.united(cat[static_cast<std::size_t>(j)].support);
        m_union = m_union.united(m_set(a, cat[static_cast<std::size_t>(j)].vec, tol));
    }
    h.j0_support_cover = supp_union == all;
    h.j0_m_cover = m_union == all;
    return h;
}

struct ZeroSetShapeReport {
    bool ok = true;
    std::vector<std::string> diff;
    std::size_t midpoints_checked = 0;
    std::size_t non_adjacent_checked = 0;

    void fail(std::string msg) {
        ok = false;
        diff.push_back(std::move(msg));
    }
};

/// Re-enumerates the zeros of B and compares them with the predicted catalog,
/// the predicted edges, and the predicted zero set: edge midpoints are zeros,
/// midpoints and 50 seeded random combinations of non-adjacent pairs are not
/// (form > 10 zero_tol).
inline ZeroSetShapeReport verify_zeroset_shape(const LiftResult& lift, const TolerancePolicy& tol = {},
                                               unsigned seed = 20240917u) {
    ZeroSetShapeReport rep;
    const SymMatrix& b = lift.lifted;
    const MinimalZeroCatalog found = enumerate_minimal_zeros(b, tol);
    const MinimalZeroCatalog& expect = lift.lifted_catalog;
    if (!found.complete) rep.fail("enumeration of B is incomplete");
    if (found.size() != expect.size())
        rep.fail("minimal zero count " + std::to_string(found.size()) + " != predicted " + std::to_string(expect.size()));
    for (std::size_t j = 0; j < std::min(found.size(), expect.size()); ++j) {
        if (found[j].support != expect[j].support)
            rep.fail("zero " + std::to_string(j + 1) + ": support " + found[j].support.to_string() + " != predicted " +
                     expect[j].support.to_string());
        else if ((found[j].vec - expect[j].vec).cwiseAbs().maxCoeff() > 1e-8)
            rep.fail("zero " + std::to_string(j + 1) + ": values differ from prediction");
    }
    if (!rep.ok) return rep;

    const ZerosGraph g = build_graph(found, tol);
    if (g.edges != lift.expected_edges) {
        std::string got, want;
        for (auto [i, j] : g.edges) got += "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
        for (auto [i, j] : lift.expected_edges) want += "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
        rep.fail("edges " + got + " != predicted " + want);
        return rep;
    }
    const CliqueCover cover = build_clique_cover(found, tol);
    const double thr = 10.0 * tol.zero_tol;
    for (auto [i, j] : g.edges) {
        const NormalizedZero mid = NormalizedZero::from_vector(0.5 * (found[i].vec + found[j].vec), tol);
        ++rep.midpoints_checked;
        if (!verify_zero(b, mid, tol) || !zero_set_contains(cover, mid))
            rep.fail("midpoint of edge (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is not a zero");
    }
    std::vector<std::pair<Index, Index>> non_adjacent;
    for (Index i = 0; i < g.vertex_count; ++i)
        for (Index j = i + 1; j < g.vertex_count; ++j)
            if (!g.adjacent(i, j)) non_adjacent.emplace_back(i, j);
    auto check = [&](Index i, Index j, double w) {
        const Vector t = w * found[static_cast<std::size_t>(i)].vec + (1.0 - w) * found[static_cast<std::size_t>(j)].vec;
        ++rep.non_adjacent_checked;
        if (!(quadratic_form(b, t) > thr))
            rep.fail("combination of non-adjacent zeros " + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                     " has form <= 10 zero_tol");
    };
    for (auto [i, j] : non_adjacent) check(i, j, 0.5);
    if (!non_adjacent.empty()) {
        std::mt19937 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, non_adjacent.size() - 1);
        std::uniform_real_distribution<double> weight(0.05, 0.95);
        for (int r = 0; r < 50; ++r) {
            const auto [i, j] = non_adjacent[pick(rng)];
            check(i, j, weight(rng));
        }
    }
    return rep;
}

} // namespace copface
