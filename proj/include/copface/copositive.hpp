#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "copface/error.hpp"
#include "copface/linalg.hpp"
#include "copface/sym_matrix.hpp"
#include "copface/tolerance.hpp"

namespace copface {

/// t^T A t.
inline double quadratic_form(const SymMatrix& a, const Vector& t) {
    if (t.size() != a.order())
        throw DimensionMismatch("quadratic_form: vector length " + std::to_string(t.size()) +
                                " does not match order " + std::to_string(a.order()));
    return t.dot(a.dense() * t);
}

inline double bilinear_form(const SymMatrix& a, const Vector& s, const Vector& t) {
    if (s.size() != a.order() || t.size() != a.order())
        throw DimensionMismatch("bilinear_form: vector length does not match order");
    return s.dot(a.dense() * t);
}

enum class CopositivityVerdict { Copositive, NotCopositive, Inconclusive };

inline const char* to_string(CopositivityVerdict v) {
    switch (v) {
        case CopositivityVerdict::Copositive: return "copositive";
        case CopositivityVerdict::NotCopositive: return "not_copositive";
        case CopositivityVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct CopositivityResult {
    CopositivityVerdict verdict = CopositivityVerdict::Inconclusive;
    /// Point of the standard simplex with witness^T A witness < -threshold; set iff NotCopositive.
    std::optional<Vector> witness;
    /// Number of simplices or principal submatrices examined.
    std::uint64_t work = 0;

    bool copositive() const { return verdict == CopositivityVerdict::Copositive; }
};

enum class CopositivityMethod {
    /// Principal-submatrix criterion when order <= max_exact_order, otherwise simplicial partition.
    Automatic,
    SimplicialPartition,
    PrincipalSubmatrices,
};

struct CopositivityOptions {
    CopositivityMethod method = CopositivityMethod::Automatic;
    std::uint64_t simplex_budget = 1'000'000;
    Index max_exact_order = 12;
};

namespace detail {

inline Vector to_simplex(Vector v) {
    v = v.cwiseMax(0.0);
    const double s = v.sum();
    return s > 0.0 ? Vector(v / s) : v;
}

/// Simplicial partition of the standard simplex. A subsimplex with vertex
/// matrix V is discarded once min_ij (V^T A V)_ij >= -eps, which bounds the
/// form from below on the whole subsimplex; a vertex with a value below -eps
/// is a witness. Subdivision bisects the longest edge.
inline CopositivityResult simplicial_partition(const SymMatrix& a, double eps, std::uint64_t budget) {
    const Index n = a.order();
    struct Cell {
        Matrix vertices;  // n x n, columns on the standard simplex
        Matrix gram;      // V^T A V
    };
    CopositivityResult res;
    std::vector<Cell> stack;
    stack.push_back({Matrix::Identity(n, n), a.dense()});
    for (Index i = 0; i < n; ++i)
        if (a(i, i) < -eps) {
            res.verdict = CopositivityVerdict::NotCopositive;
            res.witness = Vector::Unit(n, i);
            res.work = 1;
            return res;
        }

    while (!stack.empty()) {
        if (res.work >= budget) {
            res.verdict = CopositivityVerdict::Inconclusive;
            return res;
        }
        Cell cell = std::move(stack.back());
        stack.pop_back();
        ++res.work;
        if (cell.gram.minCoeff() >= -eps) continue;

        Index ea = 0, eb = 1;
        double longest = -1.0;
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j) {
                const double len = (cell.vertices.col(i) - cell.vertices.col(j)).squaredNorm();
                if (len > longest) {
                    longest = len;
                    ea = i;
                    eb = j;
                }
            }
        const Vector mid = 0.5 * (cell.vertices.col(ea) + cell.vertices.col(eb));
        // Row of V^T A V for the midpoint, from the parent's Gram matrix.
        Vector mid_row = 0.5 * (cell.gram.row(ea) + cell.gram.row(eb)).transpose();
        const double mid_diag = 0.25 * (cell.gram(ea, ea) + 2.0 * cell.gram(ea, eb) + cell.gram(eb, eb));
        if (mid_diag < -eps) {
            res.verdict = CopositivityVerdict::NotCopositive;
            res.witness = to_simplex(mid);
            return res;
        }
        for (Index replaced : {ea, eb}) {
            Cell child = cell;
            child.vertices.col(replaced) = mid;
            child.gram.row(replaced) = mid_row.transpose();
            child.gram.col(replaced) = mid_row;
            child.gram(replaced, replaced) = mid_diag;
            stack.push_back(std::move(child));
        }
    }
    res.verdict = CopositivityVerdict::Copositive;
    return res;
}

/// A is copositive iff no principal submatrix has an eigenvector in the
/// nonnegative orthant with a negative eigenvalue. Eigenvalues closer than
/// the threshold are grouped, and a cluster of dimension >= 2 is searched for
/// a nonnegative vector with nonnegative least squares.
inline CopositivityResult principal_submatrices(const SymMatrix& a, double eps) {
    const Index n = a.order();
    CopositivityResult res;
    const double cluster_tol = 1e-8 * std::max(1.0, a.spectral_norm());
    auto report = [&](const std::vector<Index>& support, const Vector& local) {
        Vector w = Vector::Zero(n);
        for (std::size_t k = 0; k < support.size(); ++k) w(support[k]) = local(static_cast<Index>(k));
        w = to_simplex(w);
        if (quadratic_form(a, w) < -eps) {
            res.verdict = CopositivityVerdict::NotCopositive;
            res.witness = w;
            return true;
        }
        return false;
    };

    // Subsets in increasing size, lexicographic within a size, so witnesses are deterministic.
    for (Index size = 1; size <= n; ++size) {
        std::vector<Index> subset(static_cast<std::size_t>(size));
        for (Index k = 0; k < size; ++k) subset[static_cast<std::size_t>(k)] = k;
        while (true) {
            ++res.work;
            const SymMatrix sub = principal_submatrix(a, std::span<const Index>(subset));
            Eigen::SelfAdjointEigenSolver<Matrix> es(sub.dense());
            const Vector& ev = es.eigenvalues();
            const Matrix& vecs = es.eigenvectors();
            Index k = 0;
            while (k < size && ev(k) < -eps / static_cast<double>(size)) {
                Index end = k + 1;
                while (end < size && ev(end) - ev(end - 1) <= cluster_tol) ++end;
                if (end - k == 1) {
                    Vector v = vecs.col(k);
                    if (v.sum() < 0.0) v = -v;
                    if (v.minCoeff() >= -1e-12 && report(subset, v)) return res;
                } else {
                    // Nonnegative vector in span(Q) with unit coordinate sum.
                    const Matrix q = vecs.middleCols(k, end - k);
                    Matrix c(size + 1, size);
                    c.topRows(size) = Matrix::Identity(size, size) - q * q.transpose();
                    c.row(size) = Vector::Ones(size).transpose();
                    Vector d = Vector::Zero(size + 1);
                    d(size) = 1.0;
                    const NnlsResult fit = nnls(c, d);
                    if (fit.residual_norm <= 1e-8 && report(subset, fit.x)) return res;
                }
                k = end;
            }
            // next combination
            Index pos = size - 1;
            while (pos >= 0 && subset[static_cast<std::size_t>(pos)] == n - size + pos) --pos;
            if (pos < 0) break;
            ++subset[static_cast<std::size_t>(pos)];
            for (Index r = pos + 1; r < size; ++r)
                subset[static_cast<std::size_t>(r)] = subset[static_cast<std::size_t>(r - 1)] + 1;
        }
    }
    res.verdict = CopositivityVerdict::Copositive;
    return res;
}

} // namespace detail

/// Decides whether min_{t in simplex} t^T A t >= -zero_tol * max(1, ||A||_2).
inline CopositivityResult is_copositive(const SymMatrix& a, const TolerancePolicy& tol = {},
                                        const CopositivityOptions& opts = {}) {
    tol.validate();
    const double eps = tol.scaled_zero(a.spectral_norm());
    switch (opts.method) {
        case CopositivityMethod::SimplicialPartition:
            return detail::simplicial_partition(a, eps, opts.simplex_budget);
        case CopositivityMethod::PrincipalSubmatrices:
            return detail::principal_submatrices(a, eps);
        case CopositivityMethod::Automatic:
            break;
    }
    if (a.order() <= opts.max_exact_order) return detail::principal_submatrices(a, eps);
    return detail::simplicial_partition(a, eps, opts.simplex_budget);
}

} // namespace copface
