// copface: command-line front end for the copface library.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "copface/copface.hpp"

namespace {

using namespace copface;

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

struct Loaded {
    SymMatrix matrix;
    MinimalZeroCatalog catalog;
};

Loaded load(const std::string& path, const TolerancePolicy& tol) {
    SymMatrix a = read_matrix_file(path, tol);
    MinimalZeroCatalog cat = enumerate_minimal_zeros(a, tol);
    return {std::move(a), std::move(cat)};
}

void print_bounds_table(const std::vector<BoundsReport>& rows) {
    std::printf("%4s  %-6s  %5s  %11s  %11s  %-26s  %s\n", "n", "parity", "lower", "constructed", "prior_upper",
                "construction", "certificate");
    for (const auto& r : rows) {
        const std::string prior = r.prior_upper ? std::to_string(*r.prior_upper) : "-";
        std::string how = r.construction;
        if (r.index_set) how += " I=" + r.index_set->to_string();
        std::string note = std::string(r.certificate.exposed ? "exposed" : "not-exposed") + " (" +
                           to_string(r.certificate.method) + ")";
        if (r.constructed_is_smaller) note += *r.constructed_is_smaller ? ", below prior" : ", prior is smaller";
        std::printf("%4d  %-6s  %5d  %11d  %11s  %-26s  %s\n", r.n, r.odd ? "odd" : "even", r.lower_bound,
                    r.upper_bound_constructed, prior.c_str(), how.c_str(), note.c_str());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Copositive extreme rays, minimal zeros and faces of the completely positive cone"};
    app.require_subcommand(1);

    TolerancePolicy tol;
    app.add_option("--tol-zero", tol.zero_tol, "Absolute zero threshold")->envname("COPFACE_TOL_ZERO");
    app.add_option("--tol-rank", tol.rank_tol_rel, "Relative singular-value threshold");
    app.fallthrough();

    std::string path, out_path, index_list;
    Index n = 0, to = 0;
    bool as_json = false;

    auto* hild = app.add_subcommand("hildebrand", "Write the odd-order circulant extremal matrix");
    hild->add_option("--n", n, "Odd order >= 5")->required();
    hild->add_option("--out", out_path, "Output matrix file")->required();

    auto* zeros = app.add_subcommand("zeros", "Enumerate normalized minimal zeros");
    auto* graph = app.add_subcommand("graph", "Minimal-zeros graph and maximal cliques");
    auto* facedim = app.add_subcommand("facedim", "Dimension of the face of CP(n) exposed by the matrix");
    auto* certify = app.add_subcommand("certify", "Certify extreme and exposed rays");
    for (auto* sc : {zeros, graph, facedim, certify}) sc->add_option("path", path, "Matrix file")->required();

    auto* lift = app.add_subcommand("lift", "Raise the order by one with the index-set lift");
    lift->add_option("path", path, "Matrix file")->required();
    lift->add_option("--index-set", index_list, "1-based indices, e.g. 1,2,3")->required();
    lift->add_option("--out", out_path, "Output matrix file for the lifted matrix")->required();

    auto* bounds = app.add_subcommand("bounds", "Face-dimension bounds from the constructions");
    bounds->add_option("--n", n, "Order in [5, 12]")->required();
    bounds->add_option("--to", to, "Report every order from --n up to this one");
    bounds->add_option("--index-set", index_list, "Override I for even orders (1-based)");
    bounds->add_flag("--json", as_json, "Emit JSON instead of a table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << Json{{"error", Json{{"kind", "usage"}, {"exit_code", 2}, {"message", e.what()}}}}.dump() << '\n';
        return 2;
    }

    try {
        tol.validate();
        if (*hild) {
            const auto [a, params] = build_circulant(n);
            write_matrix_file(out_path, a);
            emit(Json{{"n", params.n}, {"alpha", params.alpha}, {"beta", params.beta}, {"out", out_path}});
        } else if (*zeros) {
            emit(to_json(load(path, tol).catalog));
        } else if (*graph) {
            emit(to_json(build_clique_cover(load(path, tol).catalog, tol)));
        } else if (*facedim) {
            const Loaded in = load(path, tol);
            const CliqueCover cover = build_clique_cover(in.catalog, tol);
            FaceDescriptor face = face_dimension(in.catalog, cover, tol);
            face.maximal = certify_exposed(in.matrix, in.catalog, cover, tol).exposed;
            emit(to_json(face));
        } else if (*certify) {
            const Loaded in = load(path, tol);
            emit(to_json(certify_exposed(in.matrix, in.catalog, build_clique_cover(in.catalog, tol), tol)));
        } else if (*lift) {
            const Loaded in = load(path, tol);
            const LiftResult res = build_lift(in.matrix, in.catalog, IndexSet::parse_one_based(index_list), tol);
            write_matrix_file(out_path, res.lifted);
            Json j = to_json(res);
            j["hypotheses"] = to_json(check_lift_hypotheses(res, in.catalog, tol));
            j["out"] = out_path;
            emit(j);
        } else if (*bounds) {
            std::optional<IndexSet> override_set;
            if (!index_list.empty()) override_set = IndexSet::parse_one_based(index_list);
            const Index last = to > 0 ? to : n;
            if (last < n) throw PreconditionError("bounds: --to must not be smaller than --n");
            std::vector<BoundsReport> rows;
            for (Index k = n; k <= last; ++k)
                rows.push_back(compute_bounds(k, tol, (k % 2 == 0) ? override_set : std::nullopt));
            if (as_json) {
                if (to > 0) {
                    Json arr = Json::array();
                    for (const auto& r : rows) arr.push_back(to_json(r));
                    emit(arr);
                } else {
                    emit(to_json(rows.front()));
                }
            } else {
                print_bounds_table(rows);
            }
        }
    } catch (const Error& e) {
        std::cerr << error_json(e).dump() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << Json{{"error", Json{{"kind", "internal"}, {"exit_code", 1}, {"message", e.what()}}}}.dump() << '\n';
        return 1;
    }
    return 0;
}
