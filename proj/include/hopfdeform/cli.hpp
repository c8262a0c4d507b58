#pragma once

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hopfdeform/json_io.hpp"

namespace hopfdeform::cli {

// exit codes: 0 success, 2 schema/usage error, 3 verification failure,
// 4 oracle mismatch

namespace detail {

inline std::vector<Scalar> parse_params(const std::string& csv) {
    std::vector<Scalar> out;
    std::size_t start = 0;
    while (start <= csv.size() && !csv.empty()) {
        std::size_t comma = csv.find(',', start);
        std::string tok = csv.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!tok.empty()) out.push_back(scalar_from_string(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

struct Target {
    std::string spec;
    std::vector<Scalar> params;

    bool is_zoo() const { return spec.rfind("zoo:", 0) == 0; }
    std::string zoo_name() const { return spec.substr(4); }
};

/// Loads a comodule algebra from a zoo key or a file.
inline ComodData resolve_comod(LoadContext& ctx, const Target& t) {
    if (t.is_zoo()) {
        zoo::ZooEntry e = zoo::zoo_get({t.zoo_name(), t.params});
        if (e.kind != zoo::ZooKind::comodule)
            throw SchemaError(t.spec + " is not a comodule algebra");
        return *e.comod;
    }
    Json j = read_json_file(t.spec);
    if (j.value("kind", "") != "comodule_algebra")
        throw SchemaError(t.spec + " is not a comodule algebra file");
    return comod_from_json(ctx, j);
}

inline const HopfData* resolve_hopf_target(LoadContext& ctx, const Target& t) {
    if (t.is_zoo()) {
        zoo::ZooEntry e = zoo::zoo_get({t.zoo_name(), t.params});
        if (e.kind != zoo::ZooKind::hopf) throw SchemaError(t.spec + " is not a Hopf algebra");
        return e.hopf;
    }
    return ctx.own(hopf_from_json(read_json_file(t.spec), ctx.verify));
}

inline Json report_header(const std::string& command, const Target& t) {
    Json j;
    j["command"] = command;
    j["target"] = t.spec;
    if (!t.params.empty()) {
        Json p = Json::array();
        for (const auto& s : t.params) p.push_back(scalar_to_string(s));
        j["params"] = p;
    }
    return j;
}

inline Json verify_report_json(const VerifyReport& rep) {
    Json j;
    j["pass"] = rep.pass;
    j["violations"] = rep.violations;
    return j;
}

struct SweedlerGenerators {
    SparseVec g, x, f, y;
};

inline SweedlerGenerators sweedler_generators() {
    const DoubleData& dd = zoo::sweedler_double();
    return {dd.embed_h(sv_unit(1)), dd.embed_h(sv_unit(2)),
            dd.embed_dual({Scalar(1), Scalar(-1), Scalar(0), Scalar(0)}),
            dd.embed_dual({Scalar(0), Scalar(0), Scalar(1), Scalar(1)})};
}

inline bool is_sweedler(const HopfData* h) { return h == &zoo::sweedler(); }

/// Relative Ext dims for a comodule algebra through a named resolution.
inline std::vector<Index> relext_dims_for_comod(LoadContext& ctx, const ComodData& ca,
                                                const std::string& resolution, int max_degree) {
    const DoubleData* dd = is_sweedler(ca.hopf) ? &zoo::sweedler_double()
                                                : ctx.own(drinfeld_double(*ca.hopf));
    AdjointAlgebra adj = adjoint_algebra(*dd, ca);
    Resolution r;
    if (resolution == "sweedler") {
        if (!is_sweedler(ca.hopf))
            throw SchemaError("the 2-periodic resolution is specific to zoo:sweedler");
        r = sweedler_resolution(max_degree + 1);
    } else if (resolution == "bar") {
        r = bar_resolution(*dd, trivial_module_of_double(*dd), max_degree + 1);
    } else {
        r = resolution_from_json(ctx, read_json_file(resolution));
    }
    return relative_ext(r, adj.rep, max_degree).dims;
}

}  // namespace detail

inline int run_main(int argc, const char* const* argv) {
    CLI::App app{"exact deformation cohomology of comodule algebras over Hopf algebras"};
    app.require_subcommand(1);

    std::string target_spec, params_csv, seed_file, phi_file, resolution = "sweedler",
                hom_with, export_key;
    int max_degree = 3, degree = 2, order = 4;
    bool normalized = false, no_verify = false, weights = false;

    auto add_target = [&](CLI::App* cmd) {
        cmd->add_option("target", target_spec, "zoo:<key> or a JSON file path")->required();
        cmd->add_option("--params", params_csv, "comma-separated rational parameters for zoo keys");
        cmd->add_flag("--no-verify", no_verify, "load files without running verifiers");
    };

    CLI::App* c_verify = app.add_subcommand("verify", "run the matching axioms verifier");
    add_target(c_verify);

    CLI::App* c_cohom = app.add_subcommand("cohomology", "cohomology dims and representatives");
    add_target(c_cohom);
    c_cohom->add_option("--max-degree", max_degree, "highest degree to compute (default 3)");
    c_cohom->add_flag("--normalized", normalized, "use the normalized subcomplex");

    CLI::App* c_cocycles = app.add_subcommand("cocycles", "basis of cocycles modulo coboundaries");
    add_target(c_cocycles);
    c_cocycles->add_option("--degree", degree, "cochain degree (default 2)");

    CLI::App* c_lift = app.add_subcommand("lift", "lift a deformation seed order by order");
    add_target(c_lift);
    c_lift->add_option("--seed", seed_file, "cochain or deformation_series JSON file")->required();
    c_lift->add_option("--order", order, "target order (default 4)");

    CLI::App* c_quasi = app.add_subcommand("quasi-check", "coassociator axioms for a 2-leg tensor");
    add_target(c_quasi);
    c_quasi->add_option("--phi", phi_file, "cochain JSON file with the coassociator")->required();

    CLI::App* c_double = app.add_subcommand("double", "emit Drinfeld double structure constants");
    add_target(c_double);

    CLI::App* c_adjoint = app.add_subcommand("adjoint", "adjoint algebra of a comodule algebra");
    add_target(c_adjoint);
    c_adjoint->add_flag("--weights", weights, "report (g,f)-weight multiplicities and x,y ranks");
    c_adjoint->add_option("--hom-with", hom_with, "zoo:<module key> to compute Hom dimensions");

    CLI::App* c_relext = app.add_subcommand("relext", "relative Ext dims through a resolution");
    add_target(c_relext);
    c_relext->add_option("--resolution", resolution, "bar | sweedler | resolution file (default sweedler)");
    c_relext->add_option("--max-degree", max_degree, "highest degree to compute (default 3)");

    CLI::App* c_cross = app.add_subcommand("crosscheck", "complex vs resolution oracle comparison");
    add_target(c_cross);
    c_cross->add_option("--max-degree", max_degree, "highest degree to compare (default 3)");

    CLI::App* c_zoo = app.add_subcommand("zoo", "catalog of built-in instances");
    CLI::App* c_zoo_list = c_zoo->add_subcommand("list", "list catalog keys");
    CLI::App* c_zoo_export = c_zoo->add_subcommand("export", "write an instance as JSON");
    c_zoo_export->add_option("key", export_key, "catalog key")->required();
    c_zoo_export->add_option("--params", params_csv, "comma-separated rational parameters");
    c_zoo->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        LoadContext ctx;
        ctx.verify = !no_verify;
        detail::Target target{target_spec, detail::parse_params(params_csv)};
        Json report;

        if (*c_verify) {
            report = detail::report_header("verify", target);
            VerifyReport rep;
            if (target.is_zoo()) {
                zoo::ZooEntry e = zoo::zoo_get({target.zoo_name(), target.params});
                switch (e.kind) {
                    case zoo::ZooKind::hopf: rep = verify_hopf_axioms(*e.hopf); break;
                    case zoo::ZooKind::comodule: rep = verify_comodule_algebra(*e.comod); break;
                    case zoo::ZooKind::dmodule: rep = dmodule_verify(*e.dmodule); break;
                }
            } else {
                LoadContext raw;
                raw.verify = false;
                Json j = read_json_file(target.spec);
                std::string kind = j.value("kind", "");
                if (kind == "hopf") rep = verify_hopf_axioms(hopf_from_json(j, false));
                else if (kind == "comodule_algebra") rep = verify_comodule_algebra(comod_from_json(raw, j));
                else if (kind == "module") rep = dmodule_verify(module_from_json(raw, j));
                else if (kind == "resolution") {
                    ResolutionReport rr = verify_resolution(resolution_from_json(raw, j));
                    report["checks"] = {{"is_complex", rr.is_complex},
                                        {"is_exact", rr.is_exact},
                                        {"is_allowable", rr.is_allowable},
                                        {"terms_rel_projective", rr.terms_rel_projective}};
                    report["notes"] = rr.notes;
                    report["pass"] = rr.pass();
                    std::cout << report.dump(2) << "\n";
                    return rr.pass() ? 0 : 3;
                } else
                    throw SchemaError("unknown kind: " + kind);
            }
            report.update(detail::verify_report_json(rep));
            std::cout << report.dump(2) << "\n";
            return rep.pass ? 0 : 3;
        }

        if (*c_cohom || *c_cocycles) {
            ComodData ca = detail::resolve_comod(ctx, target);
            DeformationComplex cx(ca);
            if (*c_cohom) {
                report = detail::report_header("cohomology", target);
                report["max_degree"] = max_degree;
                report["normalized"] = normalized;
                Json dims = Json::array(), reps = Json::array();
                for (int n = 0; n <= max_degree; ++n) {
                    CohomologyResult res = normalized ? cx.normalized_cohomology(n) : cx.cohomology(n);
                    dims.push_back(res.dim);
                    Json degree_reps = Json::array();
                    for (const auto& r : res.representatives)
                        degree_reps.push_back(cochain_json(ca, r)["entries"]);
                    Json d;
                    d["degree"] = n;
                    d["dim"] = res.dim;
                    d["representatives"] = std::move(degree_reps);
                    reps.push_back(std::move(d));
                }
                report["dims"] = std::move(dims);
                report["degrees"] = std::move(reps);
            } else {
                report = detail::report_header("cocycles", target);
                report["degree"] = degree;
                CohomologyResult res = cx.cohomology(degree);
                report["dim"] = res.dim;
                Json reps = Json::array();
                for (const auto& r : res.representatives)
                    reps.push_back(cochain_json(ca, r)["entries"]);
                report["representatives"] = std::move(reps);
            }
            std::cout << report.dump(2) << "\n";
            return 0;
        }

        if (*c_lift) {
            ComodData ca = detail::resolve_comod(ctx, target);
            Json seed = read_json_file(seed_file);
            DeformationSeries s;
            s.comod = &ca;
            std::string kind = seed.value("kind", "");
            if (kind == "cochain") {
                TensorElement c = cochain_from_json(ca, seed);
                if (c.legs != 2) throw SchemaError("lift seed must have degree 2");
                s.terms.push_back(std::move(c));
            } else if (kind == "deformation_series") {
                s = series_from_json(ca, seed);
            } else
                throw SchemaError("seed must be a cochain or deformation_series file");
            VerifyReport vr = verify_series(s);
            if (!vr.pass) throw VerificationError("seed series: " + vr.violations.front());

            report = detail::report_header("lift", target);
            report["order"] = order;
            DeformationComplex cx(ca);
            bool obstructed = false;
            Json obstruction_class = Json::array();
            while (s.order() < order) {
                LiftOutcome out = lift_step(cx, s);
                if (out.obstructed) {
                    obstructed = true;
                    for (const auto& [j, c] : out.obstruction_class)
                        obstruction_class.push_back(Json::array({j, scalar_to_string(c)}));
                    break;
                }
                s = std::move(out.series);
            }
            report["obstructed"] = obstructed;
            if (obstructed)
                report["obstruction_class"] = std::move(obstruction_class);
            else
                report["series"] = series_json(ca, s);
            std::cout << report.dump(2) << "\n";
            return 0;
        }

        if (*c_quasi) {
            ComodData ca = detail::resolve_comod(ctx, target);
            TensorElement phi = cochain_from_json(ca, read_json_file(phi_file));
            QuasiComodReport q = verify_quasi_comodule(ca, phi);
            report = detail::report_header("quasi-check", target);
            report["checks"] = {{"commutation", q.commutation},
                                {"pentagon", q.pentagon},
                                {"counital", q.counital},
                                {"invertible", q.invertible}};
            report["pass"] = q.pass();
            std::cout << report.dump(2) << "\n";
            return q.pass() ? 0 : 3;
        }

        if (*c_double) {
            const HopfData* h = detail::resolve_hopf_target(ctx, target);
            DoubleData dd = drinfeld_double(*h);
            report = detail::report_header("double", target);
            report["dim"] = dd.dim();
            report.update(algebra_json(dd.alg));
            std::cout << report.dump(2) << "\n";
            return 0;
        }

        if (*c_adjoint) {
            ComodData ca = detail::resolve_comod(ctx, target);
            const DoubleData* dd = detail::is_sweedler(ca.hopf) ? &zoo::sweedler_double()
                                                                : ctx.own(drinfeld_double(*ca.hopf));
            AdjointAlgebra adj = adjoint_algebra(*dd, ca);
            report = detail::report_header("adjoint", target);
            report["dim"] = adj.dim();
            report["module_verified"] = dmodule_verify(adj.rep).pass;
            report["algebra_verified"] = verify_algebra_axioms(adj.carrier_alg).pass;
            if (weights) {
                if (!detail::is_sweedler(ca.hopf))
                    throw SchemaError("--weights is defined for comodule algebras over zoo:sweedler");
                auto gens = detail::sweedler_generators();
                auto w = gf_weight_multiplicities(adj.rep, gens.g, gens.f);
                report["gf_weights"] = {{"++", w[{1, 1}]},
                                        {"+-", w[{1, -1}]},
                                        {"-+", w[{-1, 1}]},
                                        {"--", w[{-1, -1}]}};
                report["generator_ranks"] = {{"x", rank(adj.rep.act(gens.x))},
                                             {"y", rank(adj.rep.act(gens.y))}};
            }
            if (!hom_with.empty()) {
                if (hom_with.rfind("zoo:", 0) != 0) throw SchemaError("--hom-with expects a zoo key");
                zoo::ZooEntry e = zoo::zoo_get({hom_with.substr(4), detail::parse_params(params_csv)});
                if (e.kind != zoo::ZooKind::dmodule || !detail::is_sweedler(ca.hopf))
                    throw SchemaError("--hom-with expects a double module key over zoo:sweedler");
                report["hom_dims"] = {
                    {"module_to_adjoint", hom_space(*e.dmodule, adj.rep, dd->generating_set()).dim()},
                    {"adjoint_to_module", hom_space(adj.rep, *e.dmodule, dd->generating_set()).dim()}};
            }
            std::cout << report.dump(2) << "\n";
            return 0;
        }

        if (*c_relext) {
            report = detail::report_header("relext", target);
            report["resolution"] = resolution;
            report["max_degree"] = max_degree;
            std::vector<Index> dims;
            bool is_module_target = false;
            if (target.is_zoo()) {
                zoo::ZooEntry e = zoo::zoo_get({target.zoo_name(), target.params});
                is_module_target = (e.kind == zoo::ZooKind::dmodule);
            } else {
                is_module_target = read_json_file(target.spec).value("kind", "") == "module";
            }
            if (is_module_target) {
                ModuleRep w;
                if (target.is_zoo())
                    w = *zoo::zoo_get({target.zoo_name(), target.params}).dmodule;
                else
                    w = module_from_json(ctx, read_json_file(target.spec));
                if (w.algebra != &zoo::sweedler_double().alg)
                    throw SchemaError("module targets must live over zoo:sweedler_double");
                Resolution r = (resolution == "bar")
                                   ? bar_resolution(zoo::sweedler_double(),
                                                    trivial_module_of_double(zoo::sweedler_double()),
                                                    max_degree + 1)
                               : (resolution == "sweedler")
                                   ? sweedler_resolution(max_degree + 1)
                                   : resolution_from_json(ctx, read_json_file(resolution));
                dims = relative_ext(r, w, max_degree).dims;
            } else {
                ComodData ca = detail::resolve_comod(ctx, target);
                dims = detail::relext_dims_for_comod(ctx, ca, resolution, max_degree);
            }
            Json jd = Json::array();
            for (Index d : dims) jd.push_back(d);
            report["dims"] = std::move(jd);
            std::cout << report.dump(2) << "\n";
            return 0;
        }

        if (*c_cross) {
            ComodData ca = detail::resolve_comod(ctx, target);
            report = detail::report_header("crosscheck", target);
            report["max_degree"] = max_degree;
            DeformationComplex cx(ca);
            std::vector<Index> complex_dims;
            for (int n = 0; n <= max_degree; ++n) complex_dims.push_back(cx.cohomology(n).dim);
            Json jc = Json::array();
            for (Index d : complex_dims) jc.push_back(d);
            report["complex"] = std::move(jc);

            bool agree = true;
            if (detail::is_sweedler(ca.hopf)) {
                auto dims = detail::relext_dims_for_comod(ctx, ca, "sweedler", max_degree);
                Json js = Json::array();
                for (Index d : dims) js.push_back(d);
                report["relext_2periodic"] = std::move(js);
                agree = agree && dims == complex_dims;
            }
            auto bar_dims = detail::relext_dims_for_comod(ctx, ca, "bar", max_degree);
            Json jb = Json::array();
            for (Index d : bar_dims) jb.push_back(d);
            report["relext_bar"] = std::move(jb);
            agree = agree && bar_dims == complex_dims;
            report["agree"] = agree;
            std::cout << report.dump(2) << "\n";
            return agree ? 0 : 4;
        }

        if (*c_zoo) {
            if (*c_zoo_list) {
                report["command"] = "zoo list";
                report["keys"] = zoo::list();
                std::cout << report.dump(2) << "\n";
                return 0;
            }
            zoo::ZooEntry e = zoo::zoo_get({export_key, detail::parse_params(params_csv)});
            switch (e.kind) {
                case zoo::ZooKind::hopf: report = hopf_json(*e.hopf); break;
                case zoo::ZooKind::comodule: report = comod_json(*e.comod, "zoo:sweedler"); break;
                case zoo::ZooKind::dmodule: report = module_json(*e.dmodule, "zoo:sweedler_double"); break;
            }
            std::cout << report.dump(2) << "\n";
            return 0;
        }
    } catch (const VerificationError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 3;
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace hopfdeform::cli
