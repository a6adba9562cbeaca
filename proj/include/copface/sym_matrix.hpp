#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "copface/error.hpp"
#include "copface/index_set.hpp"
#include "copface/tolerance.hpp"

namespace copface {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Dense real symmetric matrix. Exact symmetry is established on
/// construction; the object is immutable afterwards.
class SymMatrix {
public:
    /// Accepts `m` if it is symmetric up to `asym_tol` (relative to max(1, max|m_ij|)),
    /// then stores the averaged matrix (m + m^T) / 2.
    explicit SymMatrix(const Matrix& m, double asym_tol = 1e-9) {
        if (m.rows() < 1 || m.rows() != m.cols())
            throw DimensionMismatch("symmetric matrix must be square with order >= 1, got " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
        const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
        if (!(asym <= asym_tol * scale))
            throw PreconditionError("matrix is not symmetric (max |a_ij - a_ji| = " + std::to_string(asym) + ")");
        data_ = 0.5 * (m + m.transpose());
        Eigen::SelfAdjointEigenSolver<Matrix> es(data_, Eigen::EigenvaluesOnly);
        norm_ = es.eigenvalues().cwiseAbs().maxCoeff();
    }

    static SymMatrix identity(Index n) { return SymMatrix(Matrix::Identity(n, n)); }
    static SymMatrix zero(Index n) { return SymMatrix(Matrix::Zero(n, n)); }
    static SymMatrix diagonal(const Vector& d) { return SymMatrix(Matrix(d.asDiagonal())); }

    Index order() const { return static_cast<Index>(data_.rows()); }
    double operator()(Index i, Index j) const { return data_(i, j); }
    const Matrix& dense() const { return data_; }

    double spectral_norm() const { return norm_; }

    SymMatrix scaled(double c) const { return SymMatrix(c * data_); }

    friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
        if (a.order() != b.order()) throw DimensionMismatch("order mismatch in matrix sum");
        return SymMatrix(a.data_ + b.data_);
    }

private:
    Matrix data_;
    double norm_ = 0.0;
};

/// Symmetric vectorization: row-major upper triangle, diagonal entries as is,
/// off-diagonal entries scaled by sqrt(2), so that trace(AB) = svec(A).svec(B).
inline Vector svec(const SymMatrix& a) {
    const Index n = a.order();
    Vector out(n * (n + 1) / 2);
    const double r2 = std::sqrt(2.0);
    Index k = 0;
    for (Index i = 0; i < n; ++i)
        for (Index j = i; j < n; ++j) out(k++) = (i == j) ? a(i, i) : r2 * a(i, j);
    return out;
}

/// Inverse of svec for a vector of length n(n+1)/2.
inline SymMatrix smat(const Vector& v) {
    const double len = static_cast<double>(v.size());
    const Index n = static_cast<Index>(std::lround((std::sqrt(8.0 * len + 1.0) - 1.0) / 2.0));
    if (n < 1 || n * (n + 1) / 2 != v.size())
        throw DimensionMismatch("vector length " + std::to_string(v.size()) + " is not triangular");
    Matrix m(n, n);
    const double r2 = std::sqrt(2.0);
    Index k = 0;
    for (Index i = 0; i < n; ++i)
        for (Index j = i; j < n; ++j) {
            const double x = (i == j) ? v(k) : v(k) / r2;
            m(i, j) = m(j, i) = x;
            ++k;
        }
    return SymMatrix(m);
}

/// svec(x x^T), used for rank-one generators of faces of CP(n).
inline Vector svec_outer(const Vector& x) {
    return svec(SymMatrix(x * x.transpose()));
}

inline double trace_inner(const SymMatrix& a, const SymMatrix& b) {
    if (a.order() != b.order()) throw DimensionMismatch("order mismatch in trace inner product");
    return (a.dense() * b.dense()).trace();
}

/// A[S, S] for a strictly increasing list of in-range indices.
inline SymMatrix principal_submatrix(const SymMatrix& a, std::span<const Index> s) {
    if (s.empty()) throw PreconditionError("principal submatrix needs a nonempty index set");
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] < 0 || s[k] >= a.order())
            throw PreconditionError("index " + std::to_string(s[k] + 1) + " out of range for order " +
                                    std::to_string(a.order()));
        if (k > 0 && s[k] <= s[k - 1])
            throw PreconditionError("principal submatrix indices must be strictly increasing without duplicates");
    }
    const Index m = static_cast<Index>(s.size());
    Matrix out(m, m);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j) out(i, j) = a(s[i], s[j]);
    return SymMatrix(out);
}

inline SymMatrix principal_submatrix(const SymMatrix& a, const IndexSet& s) {
    return principal_submatrix(a, std::span<const Index>(s.items()));
}

// ---------------------------------------------------------------------------
// Matrix text format: first line "n", then n rows of n whitespace-separated
// decimal numbers.

inline SymMatrix read_matrix(std::istream& in, const TolerancePolicy& tol = {}) {
    long n = 0;
    if (!(in >> n)) throw ParseError("matrix text: missing order on first line");
    if (n < 1 || n > 4096) throw ParseError("matrix text: invalid order " + std::to_string(n));
    Matrix m(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            std::string tok;
            if (!(in >> tok))
                throw ParseError("matrix text: expected " + std::to_string(n * n) + " entries, got " +
                                 std::to_string(i * n + j));
            std::size_t used = 0;
            double x = 0.0;
            try {
                x = std::stod(tok, &used);
            } catch (const std::exception&) {
                throw ParseError("matrix text: invalid number '" + tok + "'");
            }
            if (used != tok.size() || !std::isfinite(x)) throw ParseError("matrix text: invalid number '" + tok + "'");
            m(i, j) = x;
        }
    std::string extra;
    if (in >> extra) throw ParseError("matrix text: trailing content '" + extra + "'");
    try {
        return SymMatrix(m, tol.zero_tol);
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("matrix text: ") + e.what());
    }
}

inline SymMatrix read_matrix_file(const std::string& path, const TolerancePolicy& tol = {}) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open matrix file '" + path + "'");
    return read_matrix(in, tol);
}

/// Writes with 17 significant digits so that reading back is exact.
inline void write_matrix(std::ostream& out, const SymMatrix& a) {
    const Index n = a.order();
    out << n << '\n';
    char buf[64];
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", a(i, j));
            if (j) out << ' ';
            out << buf;
        }
        out << '\n';
    }
}

inline std::string matrix_to_text(const SymMatrix& a) {
    std::ostringstream os;
    write_matrix(os, a);
    return os.str();
}

inline void write_matrix_file(const std::string& path, const SymMatrix& a) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_matrix(out, a);
    if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace copface
