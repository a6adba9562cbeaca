#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "copface/copositive.hpp"
#include "copface/error.hpp"
#include "copface/index_set.hpp"
#include "copface/linalg.hpp"
#include "copface/sym_matrix.hpp"
#include "copface/tolerance.hpp"

namespace copface {

/// Nonnegative vector with unit l1 norm. Entries at or below zero_tol are
/// stored as exact zeros; `support` lists the remaining ones.
struct NormalizedZero {
    Vector vec;
    IndexSet support;

    /// Normalizes a nonnegative nonzero vector. Components below -zero_tol
    /// (after scaling to unit sum) are rejected.
    static NormalizedZero from_vector(const Vector& x, const TolerancePolicy& tol = {}) {
        const double s = x.sum();
        if (!(s > 0.0) || !std::isfinite(s)) throw PreconditionError("zero vector must be nonnegative and nonzero");
        Vector y = x / s;
        if (y.minCoeff() < -tol.zero_tol)
            throw PreconditionError("zero vector has a negative component " + std::to_string(y.minCoeff()));
        std::vector<Index> supp;
        for (Index i = 0; i < y.size(); ++i) {
            if (y(i) <= tol.zero_tol)
                y(i) = 0.0;
            else
                supp.push_back(i);
        }
        y /= y.sum();
        return {y, IndexSet(std::move(supp))};
    }

    Index dimension() const { return static_cast<Index>(vec.size()); }
};

/// Normalized minimal zeros of a copositive matrix, sorted lexicographically
/// by support.
///
/// `complete` records that the enumeration was unambiguous: no candidate
/// support outside the found ones carried a multi-dimensional kernel that
/// contains a nonnegative vector. The full zero set is then the union of the
/// convex hulls over the maximal cliques of the minimal-zeros graph.
struct MinimalZeroCatalog {
    SymMatrix matrix;
    std::vector<NormalizedZero> zeros;
    bool complete = true;

    std::size_t size() const { return zeros.size(); }
    bool empty() const { return zeros.empty(); }
    const NormalizedZero& operator[](std::size_t j) const { return zeros[j]; }

    void sort_by_support() {
        std::sort(zeros.begin(), zeros.end(),
                  [](const NormalizedZero& a, const NormalizedZero& b) { return a.support < b.support; });
    }
};

/// supp(v) with the matrix-scaled zero threshold; used for supp(A tau).
inline IndexSet support_of(const Vector& v, double threshold) {
    std::vector<Index> out;
    for (Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > threshold) out.push_back(i);
    return IndexSet(std::move(out));
}

/// supp(A tau), thresholded at zero_tol * max(1, ||A||).
inline IndexSet image_support(const SymMatrix& a, const Vector& tau, const TolerancePolicy& tol) {
    return support_of(a.dense() * tau, tol.scaled_zero(a.spectral_norm()));
}

/// [n] \ supp(A tau): the indices k with e_k^T A tau = 0.
inline IndexSet m_set(const SymMatrix& a, const Vector& tau, const TolerancePolicy& tol) {
    return IndexSet::range(a.order()).minus(image_support(a, tau, tol));
}

inline bool verify_zero(const SymMatrix& a, const NormalizedZero& t, const TolerancePolicy& tol = {}) {
    if (t.dimension() != a.order())
        throw DimensionMismatch("verify_zero: vector length " + std::to_string(t.dimension()) +
                                " does not match order " + std::to_string(a.order()));
    if (t.vec.minCoeff() < 0.0) return false;
    if (std::abs(t.vec.sum() - 1.0) > 1e-10) return false;
    return std::abs(quadratic_form(a, t.vec)) <= tol.scaled_zero(a.spectral_norm());
}

struct EnumerationOptions {
    Index max_order = 12;
    CopositivityOptions copositivity{};
};

namespace detail {

/// Nonnegative unit-sum vector in the column span of an orthonormal Q, if any.
inline std::optional<Vector> nonnegative_in_span(const Matrix& q) {
    const Index m = static_cast<Index>(q.rows());
    Matrix c(m + 1, m);
    c.topRows(m) = Matrix::Identity(m, m) - q * q.transpose();
    c.row(m) = Vector::Ones(m).transpose();
    Vector d = Vector::Zero(m + 1);
    d(m) = 1.0;
    const NnlsResult fit = nnls(c, d);
    if (fit.residual_norm <= 1e-8) return fit.x;
    return std::nullopt;
}

template <class F>
void for_each_subset_by_size(Index n, F&& visit) {
    for (Index size = 1; size <= n; ++size) {
        std::vector<Index> s(static_cast<std::size_t>(size));
        for (Index k = 0; k < size; ++k) s[static_cast<std::size_t>(k)] = k;
        while (true) {
            visit(s);
            Index pos = size - 1;
            while (pos >= 0 && s[static_cast<std::size_t>(pos)] == n - size + pos) --pos;
            if (pos < 0) break;
            ++s[static_cast<std::size_t>(pos)];
            for (Index r = pos + 1; r < size; ++r)
                s[static_cast<std::size_t>(r)] = s[static_cast<std::size_t>(r - 1)] + 1;
        }
    }
}

} // namespace detail

/// Enumerates all normalized minimal zeros of a copositive matrix.
///
/// Supports are visited by increasing cardinality. A support S that contains
/// no earlier support yields a minimal zero iff ker A[S,S] is one-dimensional
/// and spanned by a strictly positive vector x with A x >= 0 after extension
/// by zeros.
inline MinimalZeroCatalog enumerate_minimal_zeros(const SymMatrix& a, const TolerancePolicy& tol = {},
                                                  const EnumerationOptions& opts = {}) {
    tol.validate();
    const Index n = a.order();
    if (n > opts.max_order)
        throw PreconditionError("enumerate_minimal_zeros: order " + std::to_string(n) +
                                " exceeds the enumeration budget (max order " + std::to_string(opts.max_order) + ")");
    const CopositivityResult cop = is_copositive(a, tol, opts.copositivity);
    if (cop.verdict == CopositivityVerdict::NotCopositive)
        throw PreconditionError("enumerate_minimal_zeros: matrix is not copositive");
    if (cop.verdict == CopositivityVerdict::Inconclusive)
        throw NumericalInconclusive("enumerate_minimal_zeros: copositivity could not be decided");

    const double kernel_threshold = tol.rank_tol_rel * a.spectral_norm();
    const double zero_thr = tol.scaled_zero(a.spectral_norm());
    MinimalZeroCatalog cat{a, {}, true};

    detail::for_each_subset_by_size(n, [&](const std::vector<Index>& s) {
        const IndexSet support(s);
        for (const auto& z : cat.zeros)
            if (z.support.is_subset_of(support)) return;

        const SymMatrix sub = principal_submatrix(a, std::span<const Index>(s));
        const NullSpace ns = null_space(sub.dense(), kernel_threshold);
        const Index nullity = static_cast<Index>(ns.basis.cols());
        if (nullity == 0) return;
        if (nullity >= 2) {
            if (detail::nonnegative_in_span(ns.basis)) cat.complete = false;
            return;
        }
        Vector x = ns.basis.col(0);
        if (x.sum() < 0.0) x = -x;
        const double cutoff = 10.0 * tol.zero_tol * x.cwiseAbs().maxCoeff();
        if (x.minCoeff() <= cutoff) return;

        Vector full = Vector::Zero(n);
        for (std::size_t k = 0; k < s.size(); ++k) full(s[k]) = x(static_cast<Index>(k));
        full /= full.sum();
        if ((a.dense() * full).minCoeff() < -zero_thr) return;
        if (std::abs(quadratic_form(a, full)) > zero_thr) return;
        NormalizedZero z{full, support};
        cat.zeros.push_back(std::move(z));
    });
    cat.sort_by_support();
    return cat;
}

} // namespace copface
