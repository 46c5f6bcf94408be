// Command-line interface: every subcommand reads JSON documents, runs one
// exact query, and emits a single JSON verdict document with certificates
// embedded. Exit 0 means a verdict was computed (including no/rejected),
// exit 1 an input problem, exit 2 an internal defect (a certificate that
// failed its replay).

#include "gaugecalc/json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace gc = gaugecalc;

namespace {

gc::Json load_doc(const std::string& arg) {
    if (!arg.empty() && (arg[0] == '{' || arg[0] == '[' || arg[0] == '"'))
        return gc::Json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("cannot open input file: " + arg);
    return gc::Json::parse(in);
}

std::uint64_t resolve_seed(std::uint64_t cli_seed) {
    if (const char* env = std::getenv("GAUGE_CALC_SEED")) return std::strtoull(env, nullptr, 10);
    return cli_seed;
}

/// Grid specs: "fan:<k>" for the deterministic rational fan, otherwise a JSON
/// document (inline or file) holding an array of direction vectors.
std::vector<gc::RatVec> resolve_grid(const std::string& spec, std::size_t dim) {
    if (spec.rfind("fan:", 0) == 0) {
        const std::size_t count = std::stoul(spec.substr(4));
        return gc::fan_directions(dim, count);
    }
    return gc::vec_list_from_json(load_doc(spec));
}

struct CommandResult {
    gc::Json doc;
};

gc::Json run_command(std::vector<std::string> args);

gc::Json run_batch(const std::string& file, unsigned jobs) {
    const gc::Json spec = load_doc(file);
    if (!spec.is_array()) throw std::invalid_argument("batch file must be a JSON array of {\"args\": [...]} entries");
    std::vector<std::vector<std::string>> cmds;
    for (const auto& entry : spec) {
        std::vector<std::string> args;
        for (const auto& a : entry.at("args")) args.push_back(a.get<std::string>());
        cmds.push_back(std::move(args));
    }
    std::vector<gc::Json> results(cmds.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < cmds.size(); ++i) results[i] = run_command(cmds[i]);
    } else {
        std::vector<std::future<gc::Json>> futs(cmds.size());
        std::size_t next = 0;
        while (next < cmds.size()) {
            const std::size_t wave = std::min<std::size_t>(jobs, cmds.size() - next);
            for (std::size_t k = 0; k < wave; ++k)
                futs[next + k] = std::async(std::launch::async,
                                            [&cmds, i = next + k] { return run_command(cmds[i]); });
            for (std::size_t k = 0; k < wave; ++k) results[next + k] = futs[next + k].get();
            next += wave;
        }
    }
    gc::Json out;
    out["schema_version"] = gc::kSchemaVersion;
    gc::Json arr = gc::Json::array();
    for (auto& r : results) arr.push_back(std::move(r));
    out["results"] = std::move(arr);
    return out;
}

gc::Json value_doc(const gc::Rational& v) {
    gc::Json j;
    j["schema_version"] = gc::kSchemaVersion;
    j["value"] = gc::to_json(v);
    return j;
}

gc::Json extended_value_doc(const gc::ExtendedRational& v) {
    gc::Json j;
    j["schema_version"] = gc::kSchemaVersion;
    j["value"] = v ? gc::Json(gc::to_string(*v)) : gc::Json("inf");
    return j;
}

gc::Json linear_dominance_doc(const gc::ConicMeasure& mu, const gc::ConicMeasure& nu,
                              gc::LinearDominance verdict, bool replay) {
    gc::Json j;
    j["schema_version"] = gc::kSchemaVersion;
    if (auto* yes = std::get_if<gc::LinearDominanceYes>(&verdict)) {
        j["verdict"] = "yes";
        j["transport"] = gc::to_json(yes->transport);
        if (replay) {
            if (!gc::verify_transport_linear(gc::canonicalize_measure(mu), gc::canonicalize_measure(nu),
                                             yes->transport))
                throw gc::CertificateDefect("transport replay failed");
            j["replay"] = "ok";
        }
    } else {
        auto& no = std::get<gc::LinearDominanceNo>(verdict);
        j["verdict"] = "no";
        j["separator"] = gc::to_json(no.separator);
        if (replay) {
            if (!gc::verify_separator_linear(gc::canonicalize_measure(mu), gc::canonicalize_measure(nu),
                                             no.separator))
                throw gc::CertificateDefect("separator replay failed");
            j["replay"] = "ok";
        }
    }
    return j;
}

gc::Json membership_doc(const gc::VPolytope& s, const std::vector<gc::VPolytope>& balls,
                        gc::MembershipVerdict verdict, bool replay) {
    gc::Json j;
    j["schema_version"] = gc::kSchemaVersion;
    if (auto* m = std::get_if<gc::MemberWitness>(&verdict)) {
        j["verdict"] = "member";
        j["expression"] = m->expression;
        gc::Json fig = gc::to_json(gc::canonicalize(m->realization));
        fig.erase("schema_version");
        j["realization"] = std::move(fig);
        if (replay) {
            if (!gc::equal_figures(m->realization, s))
                throw gc::CertificateDefect("member expression replay failed");
            j["replay"] = "ok";
        }
    } else if (auto* r = std::get_if<gc::RejectionCertificate>(&verdict)) {
        j["verdict"] = "rejected";
        j["y"] = gc::to_json(r->y);
        j["xs"] = gc::to_json(r->xs);
        if (replay) {
            if (!gc::verify_rejection(s, balls, *r))
                throw gc::CertificateDefect("rejection replay failed");
            j["replay"] = "ok";
        }
    } else {
        auto& c = std::get<gc::ConsistentReport>(verdict);
        j["verdict"] = "consistent";
        j["tuples_tried"] = c.tuples_tried;
        j["n_max"] = c.n_max;
        j["seed"] = c.seed;
        j["truncation_depth"] = c.truncation_depth;
    }
    return j;
}

gc::Json run_command(std::vector<std::string> args) {
    CLI::App app{"exact gauge calculus"};
    app.require_subcommand(1);
    gc::Json result;

    std::string fig_a, fig_b, point_arg, dir_arg, alpha_arg, matrix_arg;
    std::string mu_arg, nu_arg, sigma_arg, grid_arg, family_arg, labeling_arg;
    std::string parts_arg, generators_arg, candidates_arg, tuples_arg, gauges_arg, xs_arg, y_arg;
    std::string scales_arg;
    bool replay = false;
    std::uint64_t seed = 0;
    std::uint64_t tuple_budget = 64;
    std::size_t n_max = 2, depth = 1;

    auto* c_support = app.add_subcommand("support", "support function value");
    c_support->add_option("--figure", fig_a)->required();
    c_support->add_option("--dir", dir_arg)->required();
    c_support->callback([&] {
        const auto p = gc::figure_from_json(load_doc(fig_a));
        result = value_doc(gc::support(p, gc::vec_from_json(load_doc(dir_arg))));
    });

    auto* c_gauge = app.add_subcommand("gauge", "Minkowski functional value");
    c_gauge->add_option("--figure", fig_a)->required();
    c_gauge->add_option("--point", point_arg)->required();
    c_gauge->callback([&] {
        const auto p = gc::figure_from_json(load_doc(fig_a));
        result = extended_value_doc(gc::gauge(p, gc::vec_from_json(load_doc(point_arg))));
    });

    auto* c_polar = app.add_subcommand("polar", "polar (dual ball)");
    c_polar->add_option("--figure", fig_a)->required();
    c_polar->callback([&] {
        result = gc::to_json(gc::polar(gc::figure_from_json(load_doc(fig_a))));
    });

    auto* c_sum = app.add_subcommand("sum", "Minkowski sum");
    c_sum->add_option("--a", fig_a)->required();
    c_sum->add_option("--b", fig_b)->required();
    c_sum->callback([&] {
        result = gc::to_json(gc::minkowski_sum(gc::figure_from_json(load_doc(fig_a)),
                                               gc::figure_from_json(load_doc(fig_b))));
    });

    auto* c_join = app.add_subcommand("join", "convex hull of the union");
    c_join->add_option("--a", fig_a)->required();
    c_join->add_option("--b", fig_b)->required();
    c_join->callback([&] {
        result = gc::to_json(gc::join(gc::figure_from_json(load_doc(fig_a)),
                                      gc::figure_from_json(load_doc(fig_b))));
    });

    auto* c_meet = app.add_subcommand("meet", "intersection");
    c_meet->add_option("--a", fig_a)->required();
    c_meet->add_option("--b", fig_b)->required();
    c_meet->callback([&] {
        auto m = gc::meet(gc::figure_from_json(load_doc(fig_a)), gc::figure_from_json(load_doc(fig_b)));
        if (m) {
            result = gc::to_json(*m);
        } else {
            result["schema_version"] = gc::kSchemaVersion;
            result["empty"] = true;
        }
    });

    auto* c_scale = app.add_subcommand("scale", "dilation by a nonnegative factor");
    c_scale->add_option("--figure", fig_a)->required();
    c_scale->add_option("--alpha", alpha_arg)->required();
    c_scale->callback([&] {
        result = gc::to_json(gc::canonicalize(
            gc::scale(gc::figure_from_json(load_doc(fig_a)), gc::parse_rational(alpha_arg))));
    });

    auto* c_opnorm = app.add_subcommand("opnorm", "operator norm against a ball");
    c_opnorm->add_option("--matrix", matrix_arg)->required();
    c_opnorm->add_option("--figure", fig_a)->required();
    c_opnorm->callback([&] {
        result = extended_value_doc(gc::operator_norm(gc::matrix_from_json(load_doc(matrix_arg)),
                                                      gc::figure_from_json(load_doc(fig_a))));
    });

    auto* c_infconv = app.add_subcommand("infconv", "infimal convolution value");
    c_infconv->add_option("--a", fig_a)->required();
    c_infconv->add_option("--b", fig_b)->required();
    c_infconv->add_option("--point", point_arg)->required();
    c_infconv->callback([&] {
        auto v = gc::inf_convolution(gc::figure_from_json(load_doc(fig_a)),
                                     gc::figure_from_json(load_doc(fig_b)),
                                     gc::vec_from_json(load_doc(point_arg)));
        result["schema_version"] = gc::kSchemaVersion;
        if (v.unbounded)
            result["unbounded"] = true;
        else
            result["value"] = gc::to_json(v.value);
    });

    auto* c_major = app.add_subcommand("majorize", "linear majorization verdict");
    c_major->add_option("--mu", mu_arg)->required();
    c_major->add_option("--nu", nu_arg)->required();
    c_major->add_flag("--replay", replay);
    c_major->callback([&] {
        const auto mu = gc::measure_from_json(load_doc(mu_arg));
        const auto nu = gc::measure_from_json(load_doc(nu_arg));
        result = linear_dominance_doc(mu, nu, gc::dominates_linear(mu, nu), replay);
    });

    auto* c_affine = app.add_subcommand("affine-majorize", "affine majorization verdict");
    c_affine->add_option("--mu", mu_arg)->required();
    c_affine->add_option("--nu", nu_arg)->required();
    c_affine->add_flag("--replay", replay);
    c_affine->callback([&] {
        const auto mu = gc::point_measure_from_json(load_doc(mu_arg));
        const auto nu = gc::point_measure_from_json(load_doc(nu_arg));
        auto verdict = gc::dominates_affine(mu, nu);
        result["schema_version"] = gc::kSchemaVersion;
        if (auto* yes = std::get_if<gc::AffineDominanceYes>(&verdict)) {
            result["verdict"] = "yes";
            result["transport"] = gc::to_json(yes->transport);
            if (replay) {
                if (!gc::verify_transport_affine(gc::canonicalize_measure(mu),
                                                 gc::canonicalize_measure(nu), yes->transport))
                    throw gc::CertificateDefect("affine transport replay failed");
                result["replay"] = "ok";
            }
        } else {
            auto& no = std::get<gc::AffineDominanceNo>(verdict);
            result["verdict"] = "no";
            result["separator"] = gc::to_json(no.separator);
            if (replay) {
                if (!gc::verify_separator_convex(gc::canonicalize_measure(mu),
                                                 gc::canonicalize_measure(nu), no.separator))
                    throw gc::CertificateDefect("convex separator replay failed");
                result["replay"] = "ok";
            }
        }
    });

    auto* c_dual = app.add_subcommand("dualcone", "dual-cone membership of a signed measure");
    c_dual->add_option("--sigma", sigma_arg)->required();
    c_dual->add_flag("--replay", replay);
    c_dual->callback([&] {
        const auto sigma = gc::signed_measure_from_json(load_doc(sigma_arg));
        auto [pos, neg] = gc::jordan(sigma);
        result = linear_dominance_doc(pos, neg, gc::in_dual_cone(sigma), replay);
    });

    auto* c_decomp = app.add_subcommand("decompose", "decomposition-theorem witness");
    c_decomp->add_option("--f", mu_arg)->required();
    c_decomp->add_option("--g", nu_arg)->required();
    c_decomp->add_option("--parts", parts_arg)->required();
    c_decomp->add_option("--generators", generators_arg)->required();
    c_decomp->add_flag("--replay", replay);
    c_decomp->callback([&] {
        const auto f = gc::measure_from_json(load_doc(mu_arg));
        const auto g = gc::measure_from_json(load_doc(nu_arg));
        std::vector<gc::ConicMeasure> parts;
        for (const auto& p : load_doc(parts_arg)) parts.push_back(gc::measure_from_json(p));
        std::vector<std::vector<gc::VPolytope>> gens;
        for (const auto& list : load_doc(generators_arg)) {
            std::vector<gc::VPolytope> row;
            for (const auto& fig : list) row.push_back(gc::figure_from_json(fig));
            gens.push_back(std::move(row));
        }
        auto verdict = gc::decomposition_witness(f, g, parts, gens);
        result["schema_version"] = gc::kSchemaVersion;
        if (auto* d = std::get_if<gc::DecompositionParts>(&verdict)) {
            result["verdict"] = "decomposed";
            gc::Json arr = gc::Json::array();
            for (const auto& part : d->parts) {
                gc::Json m = gc::to_json(part);
                m.erase("schema_version");
                arr.push_back(std::move(m));
            }
            result["parts"] = std::move(arr);
            if (replay) {
                for (std::size_t k = 0; k < d->parts.size(); ++k)
                    for (const auto& h : gens[k])
                        if (gc::pair(d->parts[k], h) < gc::pair(parts[k], h))
                            throw gc::CertificateDefect("decomposition replay failed");
                result["replay"] = "ok";
            }
        } else {
            result["verdict"] = "infeasible";
            result["farkas"] = gc::to_json(std::get<gc::DecompositionInfeasible>(verdict).farkas);
        }
    });

    auto* c_label = app.add_subcommand("label", "labeling queries");
    c_label->require_subcommand(1);

    auto* c_lverify = c_label->add_subcommand("verify", "dual-cone criterion on a grid");
    c_lverify->add_option("--labeling", labeling_arg)->required();
    c_lverify->add_option("--grid", grid_arg)->required();
    c_lverify->callback([&] {
        const auto l = gc::labeling_from_json(load_doc(labeling_arg));
        auto report = gc::verify_labeling(l, resolve_grid(grid_arg, l.dim));
        result["schema_version"] = gc::kSchemaVersion;
        result["verdict"] = report.pass ? "pass" : "fail";
        result["checked"] = report.checked.size();
        result["grid_necessary_only"] = report.grid_necessary_only;
        if (report.failure) {
            result["direction"] = gc::to_json(report.failure->direction);
            result["separator"] = gc::to_json(report.failure->separator);
        }
    });

    auto* c_lplanar = c_label->add_subcommand("planar", "four sign-pattern conditions");
    c_lplanar->add_option("--labeling", labeling_arg)->required();
    c_lplanar->add_option("--grid", grid_arg)->required();
    c_lplanar->callback([&] {
        const auto l = gc::labeling_from_json(load_doc(labeling_arg));
        auto report = gc::verify_labeling_planar(l, gc::vec_list_from_json(load_doc(grid_arg)));
        result["schema_version"] = gc::kSchemaVersion;
        result["verdict"] = report.pass ? "pass" : "fail";
        gc::Json cells = gc::Json::array();
        for (const auto& cell : report.cells) {
            gc::Json cj;
            cj["delta"] = gc::to_json(cell.delta);
            cj["signs"] = gc::Json::array({cell.sign1, cell.sign2});
            cj["ok"] = cell.ok;
            if (cell.separator) cj["separator"] = gc::to_json(*cell.separator);
            cells.push_back(std::move(cj));
        }
        result["cells"] = std::move(cells);
    });

    auto* c_lsimplest = c_label->add_subcommand("simplest", "bounding-box-center label");
    c_lsimplest->add_option("--figure", fig_a)->required();
    c_lsimplest->callback([&] {
        const auto p = gc::figure_from_json(load_doc(fig_a));
        const auto label = gc::simplest_label(p);
        result["schema_version"] = gc::kSchemaVersion;
        result["label"] = gc::to_json(label);
        result["member"] = true;  // checked inside simplest_label
    });

    auto* c_lsolve = c_label->add_subcommand("solve", "labeling-parameter LP");
    c_lsolve->add_option("--candidates", candidates_arg)->required();
    c_lsolve->add_option("--grid", grid_arg)->required();
    c_lsolve->callback([&] {
        auto sol = gc::solve_labeling_system(gc::vec_list_from_json(load_doc(candidates_arg)),
                                             gc::vec_list_from_json(load_doc(grid_arg)));
        result["schema_version"] = gc::kSchemaVersion;
        if (auto* l = std::get_if<gc::Labeling>(&sol)) {
            result["verdict"] = "labeling";
            gc::Json lj = gc::to_json(*l);
            lj.erase("schema_version");
            result["labeling"] = std::move(lj);
        } else {
            result["verdict"] = "infeasible";
            result["farkas"] = gc::to_json(std::get<gc::LabelingSystemInfeasible>(sol).farkas);
        }
    });

    auto* c_hull = app.add_subcommand("hull", "semilattice hull queries");
    c_hull->require_subcommand(1);

    auto* c_hmember = c_hull->add_subcommand("member", "hull membership with truncation");
    c_hmember->add_option("--figure", fig_a)->required();
    c_hmember->add_option("--family", family_arg)->required();
    c_hmember->add_option("--depth", depth);
    c_hmember->add_option("--tuples", tuple_budget);
    c_hmember->add_option("--nmax", n_max);
    c_hmember->add_option("--seed", seed);
    c_hmember->add_option("--grid", grid_arg);
    c_hmember->add_option("--scales", scales_arg);
    c_hmember->add_flag("--replay", replay);
    c_hmember->callback([&] {
        const auto s = gc::figure_from_json(load_doc(fig_a));
        const auto f = gc::family_from_json(load_doc(family_arg));
        const auto grid = grid_arg.empty() ? gc::fan_directions(f.dim, 16) : resolve_grid(grid_arg, f.dim);
        std::vector<gc::Rational> scales;
        if (!scales_arg.empty())
            for (const auto& sj : load_doc(scales_arg)) scales.push_back(gc::rational_from_json(sj));
        gc::SearchBudget budget{tuple_budget, n_max, resolve_seed(seed)};
        auto verdict = gc::hull_membership(s, f, depth, budget, grid, scales);
        // Replay needs the enlarged family the certificate was found against.
        const auto trunc = gc::build_meet_truncation(f, depth, scales);
        result = membership_doc(s, trunc.generated, std::move(verdict), replay);
    });

    auto* c_h422 = c_hull->add_subcommand("rep422", "simple representation and deviation");
    c_h422->add_option("--figure", fig_a)->required();
    c_h422->add_option("--family", family_arg)->required();
    c_h422->add_option("--grid", grid_arg)->required();
    c_h422->callback([&] {
        const auto s = gc::figure_from_json(load_doc(fig_a));
        const auto f = gc::family_from_json(load_doc(family_arg));
        auto [fig, dev] = gc::outer_rep_422(s, f, resolve_grid(grid_arg, f.dim));
        result = gc::to_json(fig);
        result["deviation"] = gc::to_string(dev);
    });

    auto* c_h421 = c_hull->add_subcommand("rep421", "tuple representation and deviation");
    c_h421->add_option("--figure", fig_a)->required();
    c_h421->add_option("--family", family_arg)->required();
    c_h421->add_option("--tuples", tuples_arg)->required();
    c_h421->add_option("--grid", grid_arg)->required();
    c_h421->callback([&] {
        const auto s = gc::figure_from_json(load_doc(fig_a));
        const auto f = gc::family_from_json(load_doc(family_arg));
        std::vector<std::vector<gc::RatVec>> tuples;
        for (const auto& t : load_doc(tuples_arg)) tuples.push_back(gc::vec_list_from_json(t));
        auto [fig, dev] = gc::rep_421(s, f, tuples, resolve_grid(grid_arg, f.dim));
        result = gc::to_json(fig);
        result["deviation"] = gc::to_string(dev);
    });

    auto* c_hdm = c_hull->add_subcommand("decompose-meet", "Theorem-5.1 witness vectors");
    c_hdm->add_option("--gauges", gauges_arg)->required();
    c_hdm->add_option("--y", y_arg)->required();
    c_hdm->add_option("--xs", xs_arg)->required();
    c_hdm->add_flag("--replay", replay);
    c_hdm->callback([&] {
        std::vector<gc::VPolytope> gauges;
        for (const auto& fig : load_doc(gauges_arg)) gauges.push_back(gc::figure_from_json(fig));
        const auto y = gc::vec_from_json(load_doc(y_arg));
        const auto xs = gc::vec_list_from_json(load_doc(xs_arg));
        auto verdict = gc::decompose_meet(gauges, y, xs);
        result["schema_version"] = gc::kSchemaVersion;
        if (auto* d = std::get_if<gc::MeetDecomposition>(&verdict)) {
            result["verdict"] = "decomposed";
            result["zs"] = gc::to_json(d->zs);
            if (replay) {
                for (const auto& s : gauges) {
                    gc::Rational sx = 0, sz = 0;
                    for (std::size_t k = 0; k < xs.size(); ++k) {
                        sx += gc::support(s, xs[k]);
                        sz += gc::support(s, d->zs[k]);
                    }
                    if (!(sx >= sz && sz >= gc::support(s, y)))
                        throw gc::CertificateDefect("meet decomposition replay failed");
                }
                result["replay"] = "ok";
            }
        } else {
            auto& inf = std::get<gc::MeetInfeasible>(verdict);
            result["verdict"] = "infeasible";
            result["farkas"] = gc::to_json(inf.farkas);
            result["coverage_warning"] = inf.coverage_warning;
        }
    });

    auto* c_h541 = c_hull->add_subcommand("check541", "accompanying-representation identity");
    c_h541->add_option("--a", fig_a)->required();
    c_h541->add_option("--b", fig_b)->required();
    c_h541->add_option("--grid", grid_arg)->required();
    c_h541->add_option("--mu", mu_arg);
    c_h541->add_option("--candidates", candidates_arg);
    c_h541->callback([&] {
        const auto p = gc::figure_from_json(load_doc(fig_a));
        const auto q = gc::figure_from_json(load_doc(fig_b));
        result["schema_version"] = gc::kSchemaVersion;
        result["identity_deviation"] =
            gc::to_string(gc::infconv_identity_check(p, q, resolve_grid(grid_arg, p.dim)));
        if (!mu_arg.empty()) {
            if (candidates_arg.empty())
                throw std::invalid_argument("--mu needs --candidates for the bound evaluation");
            auto bound = gc::eval_541_bound(p, q, gc::measure_from_json(load_doc(mu_arg)),
                                            gc::vec_list_from_json(load_doc(candidates_arg)));
            result["lhs"] = gc::to_string(bound.lhs);
            result["best_rhs"] = gc::to_string(bound.best_rhs);
        }
    });

    auto* c_canon = app.add_subcommand("canon", "canonical form of a document");
    c_canon->add_option("--figure", fig_a);
    c_canon->add_option("--measure", mu_arg);
    c_canon->add_option("--signed", sigma_arg);
    c_canon->add_option("--labeling", labeling_arg);
    c_canon->callback([&] {
        if (!fig_a.empty())
            result = gc::to_json(gc::canonicalize(gc::figure_from_json(load_doc(fig_a))));
        else if (!mu_arg.empty())
            result = gc::to_json(gc::canonicalize_measure(gc::measure_from_json(load_doc(mu_arg))));
        else if (!sigma_arg.empty())
            result = gc::to_json(gc::canonicalize_measure(gc::signed_measure_from_json(load_doc(sigma_arg))));
        else if (!labeling_arg.empty())
            result = gc::to_json(gc::canonicalize_labeling(gc::labeling_from_json(load_doc(labeling_arg))));
        else
            throw std::invalid_argument("canon: pass one of --figure, --measure, --signed, --labeling");
    });

    std::string batch_file;
    unsigned jobs = 1;
    auto* c_batch = app.add_subcommand("batch", "run a list of commands with deterministic merge order");
    c_batch->add_option("--file", batch_file)->required();
    c_batch->add_option("--jobs", jobs);
    c_batch->callback([&] { result = run_batch(batch_file, jobs); });

    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
    return result;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string output_path;
    // --output applies to the whole invocation; strip it before dispatch.
    for (std::size_t i = 0; i + 1 < args.size();) {
        if (args[i] == "--output") {
            output_path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                       args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        } else {
            ++i;
        }
    }
    try {
        const gc::Json result = run_command(std::move(args));
        const std::string text = result.dump(2) + "\n";
        if (output_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(output_path);
            if (!out) throw std::invalid_argument("cannot open output file: " + output_path);
            out << text;
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const gc::Json::parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const gc::CertificateDefect& e) {
        std::cerr << "internal defect: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal defect: " << e.what() << "\n";
        return 2;
    }
}
