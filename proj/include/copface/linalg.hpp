#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "copface/error.hpp"
#include "copface/sym_matrix.hpp"
#include "copface/tolerance.hpp"

namespace copface {

/// Outcome of a thresholded rank decision, with the singular values on either
/// side of the cut so callers can report how clear-cut the decision was.
struct RankInfo {
    Index rank = 0;
    double sigma_max = 0.0;
    double threshold = 0.0;
    double smallest_kept = std::numeric_limits<double>::infinity();
    double largest_dropped = 0.0;

    /// min(smallest_kept / threshold, threshold / largest_dropped); infinite
    /// when one side is empty.
    double gap_ratio() const {
        const double above = smallest_kept / threshold;
        const double below = largest_dropped > 0.0 ? threshold / largest_dropped
                                                    : std::numeric_limits<double>::infinity();
        return std::min(above, below);
    }
};

namespace detail {

inline RankInfo classify(const Vector& sv, double threshold) {
    RankInfo info;
    info.sigma_max = sv.size() ? sv.maxCoeff() : 0.0;
    info.threshold = threshold;
    for (Index k = 0; k < sv.size(); ++k) {
        if (sv(k) > threshold) {
            ++info.rank;
            info.smallest_kept = std::min(info.smallest_kept, sv(k));
        } else {
            info.largest_dropped = std::max(info.largest_dropped, sv(k));
        }
    }
    return info;
}

} // namespace detail

/// Numerical nullspace of a general matrix: columns are an orthonormal basis
/// of span{v : singular value of v <= threshold} (including the directions
/// beyond min(rows, cols)).
struct NullSpace {
    Matrix basis;  // cols x nullity
    RankInfo info;
};

inline NullSpace null_space(const Matrix& m, double threshold) {
    const Index cols = static_cast<Index>(m.cols());
    if (m.rows() == 0) return {Matrix::Identity(cols, cols), RankInfo{0, 0.0, threshold}};
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const Vector sv = svd.singularValues();
    RankInfo info = detail::classify(sv, threshold);
    // Singular values are sorted decreasingly, so the kept directions are the leading ones.
    const Index nullity = cols - info.rank;
    return {svd.matrixV().rightCols(nullity), info};
}

/// Nullspace with threshold rank_tol_rel * sigma_max(m).
inline NullSpace null_space_relative(const Matrix& m, const TolerancePolicy& tol) {
    if (m.rows() == 0 || m.cols() == 0) return null_space(m, 0.0);
    Eigen::JacobiSVD<Matrix> probe(m);
    const double smax = probe.singularValues().size() ? probe.singularValues()(0) : 0.0;
    return null_space(m, tol.rank_tol_rel * smax);
}

/// Rank of the stacked svec vectors of a family of equal-order symmetric matrices.
inline RankInfo rank_info_of_family(std::span<const SymMatrix> mats, const TolerancePolicy& tol) {
    if (mats.empty()) return RankInfo{};
    const Index n = mats.front().order();
    const Index len = n * (n + 1) / 2;
    Matrix stacked(static_cast<Index>(mats.size()), len);
    for (std::size_t r = 0; r < mats.size(); ++r) {
        if (mats[r].order() != n)
            throw DimensionMismatch("rank_of_family: mixed orders " + std::to_string(n) + " and " +
                                    std::to_string(mats[r].order()));
        stacked.row(static_cast<Index>(r)) = svec(mats[r]).transpose();
    }
    Eigen::JacobiSVD<Matrix> svd(stacked);
    const Vector sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    if (smax == 0.0) return RankInfo{0, 0.0, 0.0};
    return detail::classify(sv, tol.rank_tol_rel * smax);
}

inline Index rank_of_family(std::span<const SymMatrix> mats, const TolerancePolicy& tol = {}) {
    return rank_info_of_family(mats, tol).rank;
}

/// Rank of a family of plain vectors (rows), same threshold policy.
inline RankInfo rank_info_of_vectors(std::span<const Vector> vecs, const TolerancePolicy& tol) {
    if (vecs.empty()) return RankInfo{};
    const Index len = static_cast<Index>(vecs.front().size());
    Matrix stacked(static_cast<Index>(vecs.size()), len);
    for (std::size_t r = 0; r < vecs.size(); ++r) {
        if (vecs[r].size() != len) throw DimensionMismatch("rank of vectors: mixed lengths");
        stacked.row(static_cast<Index>(r)) = vecs[r].transpose();
    }
    Eigen::JacobiSVD<Matrix> svd(stacked);
    const Vector sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    if (smax == 0.0) return RankInfo{0, 0.0, 0.0};
    return detail::classify(sv, tol.rank_tol_rel * smax);
}

/// Orthonormal basis (as a list) of the numerical kernel of a symmetric matrix,
/// threshold rank_tol_rel * ||A||_2. The zero matrix has the whole space as kernel.
inline std::vector<Vector> kernel_basis(const SymMatrix& a, const TolerancePolicy& tol = {}) {
    const NullSpace ns = null_space(a.dense(), tol.rank_tol_rel * a.spectral_norm());
    std::vector<Vector> out;
    for (Index k = 0; k < ns.basis.cols(); ++k) out.emplace_back(ns.basis.col(k));
    return out;
}

// ---------------------------------------------------------------------------
// Nonnegative least squares, Lawson & Hanson active-set method.

struct NnlsResult {
    Vector x;
    double residual_norm = 0.0;  // ||C x - d||_2
    bool converged = true;
};

inline NnlsResult nnls(const Matrix& c, const Vector& d) {
    const Index n = static_cast<Index>(c.cols());
    if (c.rows() != d.size()) throw DimensionMismatch("nnls: rhs length does not match rows");
    Vector x = Vector::Zero(n);
    if (n == 0) return {x, d.norm(), true};

    std::vector<bool> passive(static_cast<std::size_t>(n), false);
    const double eps = std::numeric_limits<double>::epsilon();
    const double wtol = 10.0 * eps * std::max<double>(1.0, c.norm()) * std::max<double>(1.0, d.norm()) *
                        static_cast<double>(std::max(c.rows(), c.cols()));

    auto solve_passive = [&](Vector& z) {
        std::vector<Index> idx;
        for (Index j = 0; j < n; ++j)
            if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
        z = Vector::Zero(n);
        if (idx.empty()) return;
        Matrix cp(c.rows(), static_cast<Index>(idx.size()));
        for (std::size_t k = 0; k < idx.size(); ++k) cp.col(static_cast<Index>(k)) = c.col(idx[k]);
        const Vector zp = cp.completeOrthogonalDecomposition().solve(d);
        for (std::size_t k = 0; k < idx.size(); ++k) z(idx[k]) = zp(static_cast<Index>(k));
    };

    bool converged = true;
    const int max_outer = 3 * static_cast<int>(n) + 10;
    int outer = 0;
    Vector w = c.transpose() * (d - c * x);
    const double cnorm = c.norm();
    while (true) {
        // Rounding in C^T r grows with ||C|| ||x||; an exact fit ends the search.
        const double noise = 10.0 * eps * static_cast<double>(std::max(c.rows(), c.cols())) *
                             (d.norm() + cnorm * x.norm()) * std::max(1.0, cnorm);
        if ((d - c * x).norm() <= noise) break;
        Index t = -1;
        double best = std::max(wtol, noise);
        for (Index j = 0; j < n; ++j)
            if (!passive[static_cast<std::size_t>(j)] && w(j) > best) {
                best = w(j);
                t = j;
            }
        if (t < 0) break;
        if (++outer > max_outer) {
            converged = false;
            break;
        }
        passive[static_cast<std::size_t>(t)] = true;

        Vector z;
        for (int inner = 0; inner < 3 * n + 10; ++inner) {
            solve_passive(z);
            bool feasible = true;
            for (Index j = 0; j < n; ++j)
                if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) feasible = false;
            if (feasible) break;
            double alpha = 1.0;
            for (Index j = 0; j < n; ++j)
                if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
                    const double denom = x(j) - z(j);
                    if (denom > 0.0) alpha = std::min(alpha, x(j) / denom);
                }
            x += alpha * (z - x);
            for (Index j = 0; j < n; ++j)
                if (passive[static_cast<std::size_t>(j)] && x(j) <= 10.0 * eps) {
                    passive[static_cast<std::size_t>(j)] = false;
                    x(j) = 0.0;
                }
        }
        solve_passive(z);
        x = z.cwiseMax(0.0);
        w = c.transpose() * (d - c * x);
    }
    return {x, (c * x - d).norm(), converged};
}

} // namespace copface
