#pragma once

// JSON reports. Indices are 1-based in every serialized form.

#include <cmath>
#include <string>

#include <json.hpp>

#include "copface/bounds.hpp"
#include "copface/constructions.hpp"
#include "copface/error.hpp"
#include "copface/face_geometry.hpp"
#include "copface/zeros.hpp"
#include "copface/zeros_graph.hpp"

namespace copface {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json vector_json(const Vector& v) {
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

inline Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline Json one_based_pair(Index i, Index j) { return Json::array({i + 1, j + 1}); }

} // namespace detail

inline Json to_json(const IndexSet& s) { return Json(s.one_based()); }

inline Json to_json(const RankInfo& r) {
    return Json{{"rank", r.rank},
                {"sigma_max", r.sigma_max},
                {"threshold", r.threshold},
                {"smallest_kept", detail::finite_or_null(r.smallest_kept)},
                {"largest_dropped", r.largest_dropped},
                {"gap_ratio", detail::finite_or_null(r.gap_ratio())}};
}

/// {support, values}: values are the entries on the support, in support order.
inline Json to_json(const NormalizedZero& z) {
    Json vals = Json::array();
    for (Index k : z.support) vals.push_back(z.vec(k));
    return Json{{"support", to_json(z.support)}, {"values", vals}};
}

inline Json zeros_json(const std::vector<NormalizedZero>& zs) {
    Json arr = Json::array();
    for (const auto& z : zs) arr.push_back(to_json(z));
    return arr;
}

inline Json to_json(const MinimalZeroCatalog& c) {
    return Json{{"order", c.matrix.order()}, {"complete", c.complete}, {"count", c.size()}, {"zeros", zeros_json(c.zeros)}};
}

inline NormalizedZero zero_from_json(const Json& j, Index n) {
    try {
        const auto support = j.at("support").get<std::vector<Index>>();
        const auto values = j.at("values").get<std::vector<double>>();
        if (support.size() != values.size()) throw ParseError("zero: support and values differ in length");
        Vector v = Vector::Zero(n);
        std::vector<Index> supp;
        for (std::size_t k = 0; k < support.size(); ++k) {
            const Index i = support[k] - 1;
            if (i < 0 || i >= n) throw ParseError("zero: support index " + std::to_string(support[k]) + " out of range");
            v(i) = values[k];
            supp.push_back(i);
        }
        return NormalizedZero{v, IndexSet(std::move(supp))};
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("zero: ") + e.what());
    }
}

/// Inverse of to_json(MinimalZeroCatalog) given the matrix the catalog belongs to.
inline MinimalZeroCatalog catalog_from_json(const SymMatrix& a, const Json& j) {
    try {
        if (j.at("order").get<Index>() != a.order()) throw DimensionMismatch("catalog: order does not match the matrix");
        MinimalZeroCatalog c{a, {}, j.at("complete").get<bool>()};
        for (const auto& z : j.at("zeros")) c.zeros.push_back(zero_from_json(z, a.order()));
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("catalog: ") + e.what());
    }
}

inline Json to_json(const CliqueCover& cover) {
    Json edges = Json::array();
    for (auto [i, j] : cover.graph.edges) edges.push_back(detail::one_based_pair(i, j));
    Json cliques = Json::array();
    for (std::size_t s = 0; s < cover.cliques.size(); ++s)
        cliques.push_back(Json{{"members", to_json(cover.cliques[s])},
                               {"p_star", to_json(cover.p_star[s])},
                               {"t_s", detail::vector_json(cover.t_s[s])}});
    return Json{{"vertices", cover.graph.vertex_count}, {"edges", edges}, {"cliques", cliques}};
}

inline Json to_json(const FaceDescriptor& f) {
    Json groups = Json::array();
    for (const auto& g : f.generator_pairs) {
        Json pairs = Json::array();
        for (auto [i, j] : g) pairs.push_back(detail::one_based_pair(i, j));
        groups.push_back(pairs);
    }
    return Json{{"order", f.matrix.order()},
                {"dimension", f.dimension},
                {"maximal", f.maximal},
                {"generator_pairs", groups},
                {"rank", to_json(f.rank)}};
}

inline Json to_json(const RayCertificate& c) {
    Json basis = Json::array();
    for (const auto& v : c.nullspace_rep) basis.push_back(detail::vector_json(v));
    return Json{{"extreme", c.extreme},
                {"exposed", c.exposed},
                {"method", to_string(c.method)},
                {"equality_nullity", c.equality_nullity},
                {"extreme_nullity", c.extreme_nullity},
                {"residuals",
                 Json{{"equality_residual", c.equality_residual}, {"span_cosine", c.span_cosine}, {"rank", to_json(c.rank)}}},
                {"nullspace_rep", basis}};
}

inline Json to_json(const LiftResult& l) {
    Json sigma = Json::array(), mu = Json::array();
    for (Index j : l.j0) {
        sigma.push_back(l.sigma.at(j));
        mu.push_back(l.mu.at(j));
    }
    return Json{{"I", to_json(l.index_set)},
                {"J0", to_json(l.j0)},
                {"sigma", sigma},
                {"mu", mu},
                {"B", matrix_to_text(l.lifted)},
                {"lifted_zeros", zeros_json(l.lifted_catalog.zeros)}};
}

inline Json to_json(const LiftHypotheses& h) {
    return Json{{"complete_and_minimal", h.complete_and_minimal},
                {"support_cover", h.support_cover},
                {"extreme", h.extreme},
                {"j0_support_cover", h.j0_support_cover},
                {"j0_m_cover", h.j0_m_cover},
                {"all", h.all()}};
}

inline Json to_json(const BoundsReport& r) {
    Json construction{{"kind", r.construction}, {"base_order", r.base_order}};
    if (r.index_set) construction["index_set"] = to_json(*r.index_set);
    return Json{{"n", r.n},
                {"parity", r.odd ? "odd" : "even"},
                {"lower_bound", r.lower_bound},
                {"upper_bound_constructed", r.upper_bound_constructed},
                {"prior_upper", r.prior_upper ? Json(*r.prior_upper) : Json(nullptr)},
                {"constructed_is_smaller", r.constructed_is_smaller ? Json(*r.constructed_is_smaller) : Json(nullptr)},
                {"construction", construction},
                {"minimal_zeros", r.minimal_zeros},
                {"certificate",
                 Json{{"extreme", r.certificate.extreme},
                      {"exposed", r.certificate.exposed},
                      {"method", to_string(r.certificate.method)},
                      {"equality_nullity", r.certificate.equality_nullity},
                      {"maximal_face", r.face.maximal}}}};
}

inline Json error_json(const Error& e) {
    return Json{{"error", Json{{"kind", e.kind()}, {"exit_code", e.exit_code()}, {"message", e.what()}}}};
}

} // namespace copface
