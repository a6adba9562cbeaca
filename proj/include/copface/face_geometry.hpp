#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "copface/error.hpp"
#include "copface/linalg.hpp"
#include "copface/zeros.hpp"
#include "copface/zeros_graph.hpp"

namespace copface {

/// Face F = CP(n) ∩ A^⊥ of the completely positive cone exposed by A.
struct FaceDescriptor {
    explicit FaceDescriptor(SymMatrix m) : matrix(std::move(m)) {}

    SymMatrix matrix;
    Index dimension = 0;
    /// V(s) = {(i, j) : i, j in J(s), i <= j} for each clique s.
    std::vector<std::vector<std::pair<Index, Index>>> generator_pairs;
    bool maximal = false;
    RankInfo rank;
};

/// dim F = rank{ (tau^i + tau^j)(tau^i + tau^j)^T : (i, j) in V(s), s in S }.
inline FaceDescriptor face_dimension(const MinimalZeroCatalog& cat, const CliqueCover& cover,
                                     const TolerancePolicy& tol = {}) {
    if (!cat.complete)
        throw PreconditionError("face_dimension: zero catalog is incomplete (complete flag false); "
                                "the clique representation of the zero set is not certified");
    FaceDescriptor face(cat.matrix);
    std::vector<Vector> gens;
    for (const IndexSet& clique : cover.cliques) {
        std::vector<std::pair<Index, Index>> pairs;
        for (std::size_t a = 0; a < clique.size(); ++a)
            for (std::size_t b = a; b < clique.size(); ++b) {
                pairs.emplace_back(clique[a], clique[b]);
                const Vector sum = cat[static_cast<std::size_t>(clique[a])].vec + cat[static_cast<std::size_t>(clique[b])].vec;
                gens.push_back(svec_outer(sum));
            }
        face.generator_pairs.push_back(std::move(pairs));
    }
    face.rank = rank_info_of_vectors(gens, tol);
    face.dimension = face.rank.rank;
    return face;
}

enum class ExposednessMethod { None, EqualityOnly, SupportCriterion, ConeProbe, Inconclusive };

inline const char* to_string(ExposednessMethod m) {
    switch (m) {
        case ExposednessMethod::None: return "none";
        case ExposednessMethod::EqualityOnly: return "equality_only";
        case ExposednessMethod::SupportCriterion: return "support_criterion";
        case ExposednessMethod::ConeProbe: return "cone_probe";
        case ExposednessMethod::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct RayCertificate {
    explicit RayCertificate(SymMatrix m) : matrix(std::move(m)) {}

    SymMatrix matrix;
    bool extreme = false;
    bool exposed = false;
    /// Nullity of the equality system the certificate was decided on.
    Index equality_nullity = 0;
    /// Nullity of the extremality system (always filled).
    Index extreme_nullity = 0;
    ExposednessMethod method = ExposednessMethod::None;
    /// Basis of the equality-system solution space, in svec coordinates.
    std::vector<Vector> nullspace_rep;
    /// |cos| between the one-dimensional solution space and svec(A); 0 if nullity != 1.
    double span_cosine = 0.0;
    /// max_k |row_k . svec(A)| / (||row_k|| ||A||_F): how well A solves its own system.
    double equality_residual = 0.0;
    RankInfo rank;
};

namespace detail {

/// Coefficients of D -> e_k^T D tau in svec coordinates.
inline Vector constraint_row(Index n, Index k, const Vector& tau) {
    Vector row = Vector::Zero(n * (n + 1) / 2);
    const double inv_r2 = 1.0 / std::sqrt(2.0);
    Index c = 0;
    for (Index i = 0; i < n; ++i)
        for (Index j = i; j < n; ++j, ++c) {
            if (i == j) {
                if (i == k) row(c) = tau(k);
            } else {
                if (i == k) row(c) += tau(j) * inv_r2;
                if (j == k) row(c) += tau(i) * inv_r2;
            }
        }
    return row;
}

inline Matrix stack_rows(const std::vector<Vector>& rows, Index width) {
    Matrix m(static_cast<Index>(rows.size()), width);
    for (std::size_t r = 0; r < rows.size(); ++r) m.row(static_cast<Index>(r)) = rows[r].transpose();
    return m;
}

inline void require_matching(const SymMatrix& a, const MinimalZeroCatalog& cat) {
    if (a.order() != cat.matrix.order())
        throw DimensionMismatch("certificate: catalog order does not match the matrix");
    const double diff = (a.dense() - cat.matrix.dense()).cwiseAbs().maxCoeff();
    if (diff > 1e-12 * std::max(1.0, a.spectral_norm()))
        throw PreconditionError("certificate: catalog was enumerated for a different matrix");
    if (!cat.complete) throw PreconditionError("certificate: zero catalog is incomplete (complete flag false)");
}

/// Solves the homogeneous system and fills nullity, basis, residuals and the span test.
inline void solve_equalities(const SymMatrix& a, const std::vector<Vector>& rows, const TolerancePolicy& tol,
                             RayCertificate& cert) {
    const Index n = a.order();
    const Index width = n * (n + 1) / 2;
    const Matrix m = stack_rows(rows, width);
    const NullSpace ns = null_space_relative(m, tol);
    cert.rank = ns.info;
    cert.equality_nullity = static_cast<Index>(ns.basis.cols());
    cert.nullspace_rep.clear();
    for (Index k = 0; k < ns.basis.cols(); ++k) cert.nullspace_rep.emplace_back(ns.basis.col(k));

    const Vector sa = svec(a);
    const double sa_norm = sa.norm();
    cert.equality_residual = 0.0;
    for (Index r = 0; r < m.rows(); ++r) {
        const double rn = m.row(r).norm();
        if (rn > 0.0 && sa_norm > 0.0)
            cert.equality_residual = std::max(cert.equality_residual, std::abs(m.row(r).dot(sa)) / (rn * sa_norm));
    }
    cert.span_cosine = (cert.equality_nullity == 1 && sa_norm > 0.0)
                           ? std::abs(ns.basis.col(0).dot(sa)) / (ns.basis.col(0).norm() * sa_norm)
                           : 0.0;
    if (cert.equality_nullity == 0)
        throw InternalConsistencyError("certificate: equality system has only the trivial solution, "
                                       "but the matrix itself must solve it");
}

inline bool spanned_by_matrix(const RayCertificate& c) { return c.equality_nullity == 1 && c.span_cosine >= 1.0 - 1e-8; }

} // namespace detail

/// Extremality test: A generates an extreme ray of COP(n) iff every symmetric D
/// with e_k^T D tau = 0 for all k in [n] \ supp(A tau), over all minimal zeros
/// tau, is a multiple of A.
inline RayCertificate certify_extreme(const SymMatrix& a, const MinimalZeroCatalog& cat, const TolerancePolicy& tol = {}) {
    detail::require_matching(a, cat);
    const Index n = a.order();
    std::vector<Vector> rows;
    for (const auto& z : cat.zeros)
        for (Index k : m_set(a, z.vec, tol)) rows.push_back(detail::constraint_row(n, k, z.vec));
    RayCertificate cert(a);
    detail::solve_equalities(a, rows, tol, cert);
    cert.extreme_nullity = cert.equality_nullity;
    cert.extreme = detail::spanned_by_matrix(cert);
    return cert;
}

/// supp(tau^j) = [n] \ supp(A tau^j) for every catalog zero. False for an empty catalog.
inline bool support_criterion(const SymMatrix& a, const MinimalZeroCatalog& cat, const TolerancePolicy& tol = {}) {
    if (cat.empty()) return false;
    for (const auto& z : cat.zeros)
        if (z.support != m_set(a, z.vec, tol)) return false;
    return true;
}

namespace detail {

/// True iff {c : H c >= 0} = {0}, i.e. the rows of H positively span the
/// column space dimension. Holds iff H has full column rank and some y > 0
/// satisfies H^T y = 0; the latter is tested as min ||H^T (1 + w)||, w >= 0.
enum class ProbeOutcome { OnlyTrivial, NontrivialSolution, Undecided };

inline ProbeOutcome probe_inequalities(const Matrix& h, const TolerancePolicy& tol) {
    const Index dim = static_cast<Index>(h.cols());
    if (dim == 0) return ProbeOutcome::OnlyTrivial;
    std::vector<Vector> kept;
    for (Index r = 0; r < h.rows(); ++r) {
        const double rn = h.row(r).norm();
        if (rn > 1e-12) kept.emplace_back(h.row(r).transpose() / rn);
    }
    if (static_cast<Index>(kept.size()) < dim + 1) return ProbeOutcome::NontrivialSolution;
    const Matrix hn = stack_rows(kept, dim);
    Eigen::JacobiSVD<Matrix> svd(hn);
    const Vector sv = svd.singularValues();
    if (detail::classify(sv, tol.rank_tol_rel * sv(0)).rank < dim) return ProbeOutcome::NontrivialSolution;

    const Matrix ht = hn.transpose();
    const Vector rhs = -ht * Vector::Ones(hn.rows());
    const NnlsResult fit = nnls(ht, rhs);
    if (!fit.converged) return ProbeOutcome::Undecided;
    const double scale = std::max(1.0, (Vector::Ones(hn.rows()) + fit.x).norm());
    return fit.residual_norm <= 1e-9 * scale ? ProbeOutcome::OnlyTrivial : ProbeOutcome::NontrivialSolution;
}

} // namespace detail

/// Exposedness test: A generates an exposed ray of COP(n) iff every symmetric D
/// with e_k^T D tau = 0 for k in J(tau, A) and e_k^T D tau >= 0 for
/// k in [n] \ supp(A tau), over all minimal zeros tau, is a multiple of A.
///
/// Decided in three tiers: the equality part alone (nullity 1), the support
/// criterion combined with extremality, and finally a feasibility probe of
/// the inequalities on the equality solution space.
inline RayCertificate certify_exposed(const SymMatrix& a, const MinimalZeroCatalog& cat, const CliqueCover& cover,
                                      const TolerancePolicy& tol = {}) {
    detail::require_matching(a, cat);
    const Index n = a.order();
    const RayCertificate ext = certify_extreme(a, cat, tol);

    std::vector<Vector> eq_rows, ineq_rows;
    for (std::size_t j = 0; j < cat.size(); ++j) {
        const Vector& tau = cat[j].vec;
        const MSets ms = m_sets(cat, cover, static_cast<Index>(j), tol);
        for (Index k : ms.m_star) eq_rows.push_back(detail::constraint_row(n, k, tau));
        for (Index k : ms.m.minus(ms.m_star)) ineq_rows.push_back(detail::constraint_row(n, k, tau));
    }
    RayCertificate cert(a);
    detail::solve_equalities(a, eq_rows, tol, cert);
    cert.extreme = ext.extreme;
    cert.extreme_nullity = ext.extreme_nullity;

    if (detail::spanned_by_matrix(cert)) {
        cert.exposed = true;
        cert.method = ExposednessMethod::EqualityOnly;
        return cert;
    }
    if (ext.extreme && support_criterion(a, cat, tol)) {
        cert.exposed = true;
        cert.method = ExposednessMethod::SupportCriterion;
        return cert;
    }

    // Solution space of the equalities: columns of N. Split off the direction of A.
    const Index m = cert.equality_nullity;
    Matrix basis(svec(a).size(), m);
    for (Index k = 0; k < m; ++k) basis.col(k) = cert.nullspace_rep[static_cast<std::size_t>(k)];
    const Vector sa = svec(a);
    if (sa.norm() == 0.0) {
        cert.method = ExposednessMethod::None;
        return cert;
    }
    Vector coords = basis.transpose() * sa;
    if ((basis * coords - sa).norm() > 1e-6 * sa.norm())
        throw InternalConsistencyError("certify_exposed: the matrix does not solve its own equality system");
    coords.normalize();
    const NullSpace complement = null_space(coords.transpose(), 0.5);
    const Matrix reduced = basis * complement.basis;  // svec-space directions orthogonal to A
    const Matrix g = detail::stack_rows(ineq_rows, sa.size());
    const Matrix h = ineq_rows.empty() ? Matrix(0, reduced.cols()) : Matrix(g * reduced);

    switch (detail::probe_inequalities(h, tol)) {
        case detail::ProbeOutcome::OnlyTrivial:
            cert.exposed = true;
            cert.method = ExposednessMethod::ConeProbe;
            break;
        case detail::ProbeOutcome::NontrivialSolution:
            cert.exposed = false;
            cert.method = ExposednessMethod::None;
            break;
        case detail::ProbeOutcome::Undecided:
            cert.exposed = false;
            cert.method = ExposednessMethod::Inconclusive;
            break;
    }
    return cert;
}

/// Face CP(n) ∩ A^⊥ for an exposed A; it is then a maximal face.
inline FaceDescriptor maximal_face_of(const SymMatrix& a, const MinimalZeroCatalog& cat, const CliqueCover& cover,
                                      const TolerancePolicy& tol = {}) {
    const RayCertificate cert = certify_exposed(a, cat, cover, tol);
    if (!cert.exposed)
        throw PreconditionError("maximal_face_of: the matrix is not certified exposed; maximality of the face is not established");
    FaceDescriptor face = face_dimension(cat, cover, tol);
    face.maximal = true;
    return face;
}

} // namespace copface
