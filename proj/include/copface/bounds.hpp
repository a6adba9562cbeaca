#pragma once

#include <optional>
#include <string>

#include "copface/constructions.hpp"
#include "copface/error.hpp"
#include "copface/face_geometry.hpp"
#include "copface/zeros.hpp"
#include "copface/zeros_graph.hpp"

namespace copface {

struct BoundsReport {
    Index n = 0;
    bool odd = true;
    Index lower_bound = 0;
    Index upper_bound_constructed = 0;
    /// (n^2 - 5n + 8) / 2, defined for n >= 6.
    std::optional<Index> prior_upper;
    /// constructed < prior (true), prior < constructed (false), unset if no prior or equal.
    std::optional<bool> constructed_is_smaller;

    std::string construction;  // "circulant" or "lift"
    Index base_order = 0;
    std::optional<IndexSet> index_set;
    std::size_t minimal_zeros = 0;
    RayCertificate certificate;
    FaceDescriptor face;
};

inline Index prior_upper_bound(Index n) { return (n * n - 5 * n + 8) / 2; }

/// Face-dimension bound for order n in [5, 12]: the circulant of order n for
/// odd n, otherwise the lift of the order-(n-1) circulant with I = [n-5]
/// (or `override_set` when given).
inline BoundsReport compute_bounds(Index n, const TolerancePolicy& tol = {},
                                   const std::optional<IndexSet>& override_set = std::nullopt) {
    if (n < 5 || n > 12) throw PreconditionError("bounds: n must lie in [5, 12], got " + std::to_string(n));
    BoundsReport r{n, n % 2 == 1, n, 0, {}, {}, {}, 0, {}, 0, RayCertificate(SymMatrix::identity(1)),
                   FaceDescriptor(SymMatrix::identity(1))};
    if (n >= 6) r.prior_upper = prior_upper_bound(n);

    auto finish = [&](const SymMatrix& m, const MinimalZeroCatalog& cat) {
        const CliqueCover cover = build_clique_cover(cat, tol);
        r.certificate = certify_exposed(m, cat, cover, tol);
        if (!r.certificate.exposed)
            throw NumericalInconclusive("bounds: constructed matrix of order " + std::to_string(n) +
                                        " could not be certified exposed");
        r.face = maximal_face_of(m, cat, cover, tol);
        r.minimal_zeros = cat.size();
        r.upper_bound_constructed = r.face.dimension;
    };

    if (r.odd && !override_set) {
        r.construction = "circulant";
        r.base_order = n;
        const MinimalZeroCatalog cat = circulant_minimal_zeros(n, tol);
        finish(cat.matrix, cat);
    } else {
        if (r.odd) throw PreconditionError("bounds: an index set override applies to even n only");
        r.construction = "lift";
        r.base_order = n - 1;
        const IndexSet set = override_set ? *override_set : IndexSet::range(n - 5);  // [base - 4] with base = n - 1
        r.index_set = set;
        const MinimalZeroCatalog base = circulant_minimal_zeros(n - 1, tol);
        const LiftResult lift = build_lift(base.matrix, base, set, tol);
        const MinimalZeroCatalog cat = enumerate_minimal_zeros(lift.lifted, tol);
        finish(lift.lifted, cat);
    }
    if (r.prior_upper && *r.prior_upper != r.upper_bound_constructed)
        r.constructed_is_smaller = r.upper_bound_constructed < *r.prior_upper;
    return r;
}

} // namespace copface
