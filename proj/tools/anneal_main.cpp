// Command-line front end: estimate / schedule / exact subcommands over
// histogram files or graph+spec model descriptions. Reports are JSON with
// 17-significant-digit numbers so equal-seed runs are byte-identical.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "anneal/errors.hpp"
#include "anneal/glauber.hpp"
#include "anneal/ising.hpp"
#include "anneal/matchings.hpp"
#include "anneal/model.hpp"
#include "anneal/oracle.hpp"
#include "anneal/pipeline.hpp"
#include "anneal/rc_sampler.hpp"
#include "anneal/spec_file.hpp"
#include "anneal/static_schedule.hpp"
#include "anneal/tpa.hpp"
#include "anneal/two_spin.hpp"

namespace {

using namespace anneal;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CommonOpts {
    std::string model_file;
    std::string graph_file;
    std::string spec_file;
    std::string beta_min_str = "-inf";
    std::string beta_max_str;
    double q_override = 0.0;
    double h_override = 0.0;
    std::uint64_t seed = 1;
    std::string oracle_kind = "exact";
    std::int64_t steps_per_sample = 0;  // 0 = heuristic default
    std::string out_file;
    int workers = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--model", o.model_file, "gross-model histogram file (x log_c per line)");
    cmd->add_option("--graph", o.graph_file, "graph file (header 'n m', edges 'u v')");
    cmd->add_option("--spec", o.spec_file, "model spec file (key=value)");
    cmd->add_option("--beta-min", o.beta_min_str, "annealing start (histogram models)");
    cmd->add_option("--beta-max", o.beta_max_str, "annealing end (histogram models)");
    cmd->add_option("--q-bound", o.q_override, "upper bound on ln Q (default: exact, raised to 2)");
    cmd->add_option("--h-bound", o.h_override, "upper bound on E[H] at beta_max (default: exact, raised to 2)");
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--oracle", o.oracle_kind, "exact | glauber")
        ->check(CLI::IsMember({"exact", "glauber"}));
    cmd->add_option("--steps-per-sample", o.steps_per_sample,
                    "Glauber steps per draw (default: 10 s ln s heuristic)");
    cmd->add_option("--out", o.out_file, "also write the report/schedule here");
    cmd->add_option("--workers", o.workers, "worker threads (env ANNEAL_WORKERS, then cores)");
}

// Everything the subcommands need from a model source.
struct ResolvedModel {
    std::optional<GrossGibbsModel> model;  // absent only for glauber oracles
    Bounds bounds;
    std::unique_ptr<GibbsOracle> oracle;
    ModelSpec::Kind kind = ModelSpec::Kind::two_spin;
    bool from_graph = false;
    std::optional<Graph> graph;
    ModelSpec spec;
};

ResolvedModel resolve_model(const CommonOpts& o, bool need_oracle) {
    if (o.model_file.empty() == o.graph_file.empty())
        throw InvalidParameter("exactly one model source required: --model or --graph/--spec");

    ResolvedModel r;
    if (!o.model_file.empty()) {
        r.model = GrossGibbsModel::load(o.model_file);
        if (o.beta_max_str.empty()) throw InvalidParameter("histogram models need --beta-max");
        r.bounds.beta_min = Beta::parse(o.beta_min_str);
        r.bounds.beta_max = Beta::parse(o.beta_max_str);
        r.bounds.q = o.q_override > 0.0
                         ? o.q_override
                         : std::max(2.0, r.model->z_gap(r.bounds.beta_min, r.bounds.beta_max));
        r.bounds.h = o.h_override > 0.0
                         ? o.h_override
                         : std::max(2.0, r.model->mean_hamiltonian(r.bounds.beta_max));
        if (need_oracle) r.oracle = std::make_unique<ExactOracle>(*r.model, o.seed);
        return r;
    }

    if (o.spec_file.empty()) throw InvalidParameter("--graph requires --spec");
    r.from_graph = true;
    r.graph = Graph::load(o.graph_file);
    const Graph& g = *r.graph;
    r.spec = parse_model_spec(o.spec_file);
    r.kind = r.spec.kind;

    switch (r.spec.kind) {
        case ModelSpec::Kind::two_spin: {
            r.bounds = two_spin_bounds(g, r.spec.two_spin, r.spec.two_spin.lambda,
                                       r.spec.flipped ? AnnealInterval::second
                                                      : AnnealInterval::first)
                           .with_paper_minimums();
            if (o.oracle_kind == "glauber") {
                std::int64_t steps = o.steps_per_sample > 0 ? o.steps_per_sample
                                                            : default_glauber_steps(g.num_vertices());
                if (need_oracle)
                    r.oracle = oracle_from_glauber_two_spin(g, r.spec.two_spin, r.spec.flipped,
                                                            steps, o.seed);
            } else {
                r.model = enumerate_two_spin(g, r.spec.two_spin, r.spec.flipped);
                if (need_oracle) r.oracle = std::make_unique<ExactOracle>(*r.model, o.seed);
            }
            break;
        }
        case ModelSpec::Kind::matchings: {
            r.bounds = matching_bounds(g, r.spec.matching_lambda).with_paper_minimums();
            if (o.oracle_kind == "glauber") {
                std::int64_t steps = o.steps_per_sample > 0 ? o.steps_per_sample
                                                            : default_glauber_steps(g.num_edges());
                if (need_oracle) r.oracle = oracle_from_glauber_matchings(g, steps, o.seed);
            } else {
                r.model = enumerate_matchings(g);
                if (need_oracle) r.oracle = std::make_unique<ExactOracle>(*r.model, o.seed);
            }
            break;
        }
        case ModelSpec::Kind::ising: {
            if (o.oracle_kind == "glauber")
                throw InvalidParameter("the Ising family uses the exact oracle here");
            IsingModel im = enumerate_ising(g, r.spec.to_ising(g));
            r.model = im.model;
            r.bounds = im.bounds.with_paper_minimums();
            if (need_oracle) r.oracle = std::make_unique<ExactOracle>(*r.model, o.seed);
            break;
        }
        case ModelSpec::Kind::random_cluster:
            // no gross-model annealing family: only `exact` supports it
            if (need_oracle)
                throw InvalidParameter(
                    "random_cluster has no annealing oracle; use the `exact` subcommand");
            r.bounds = Bounds{2.0, 2.0, Beta::ninf(), Beta(0.0)};
            break;
    }
    return r;
}

int cmd_estimate(const CommonOpts& o, const std::string& algorithm, double eps, double delta,
                 double kappa_cap, std::int64_t max_k, bool allow_infeasible) {
    if (!(eps > 0.0 && eps < 0.5)) throw InvalidParameter("eps must lie in (0, 1/2)");
    Parallel par(o.workers);
    ResolvedModel rm = resolve_model(o, /*need_oracle=*/true);

    EstimatorOptions opts;
    opts.kappa_cap = kappa_cap;
    opts.max_k = max_k;
    opts.allow_infeasible = allow_infeasible;

    auto run_once = [&](GibbsOracle& oracle, std::uint64_t seed) {
        if (algorithm == "static") return estimate_nonadaptive(oracle, rm.bounds, eps, seed, par);
        return estimate_three_round(oracle, rm.bounds, eps, seed, par, opts);
    };

    EstimateReport report;
    if (delta > 0.0) {
        // fresh oracle per replica keeps the replicas' stream spaces disjoint
        report = median_boost(
            [&](int replica) {
                CommonOpts ro = o;
                ro.seed = mix64(o.seed, static_cast<std::uint64_t>(replica) + 1);
                ResolvedModel rrm = resolve_model(ro, true);
                return run_once(*rrm.oracle, ro.seed);
            },
            delta, par);
        report.seed = o.seed;
    } else {
        report = run_once(*rm.oracle, o.seed);
        if (report.samples_total != static_cast<std::int64_t>(rm.oracle->total_draws()))
            throw std::logic_error("sample accounting mismatch against the oracle counter");
    }

    std::string json = report.to_json();
    std::cout << json << "\n";
    if (!o.out_file.empty()) {
        std::ofstream out(o.out_file);
        if (!out) throw IoError("cannot write report: " + o.out_file);
        out << json << "\n";
    }
    return 0;
}

int cmd_schedule(const CommonOpts& o, const std::string& algorithm, double theta, int tpa_k,
                 const std::string& sched_out) {
    Parallel par(o.workers);
    bool needs_oracle = algorithm == "tpa" || algorithm == "pseudo-tpa";
    ResolvedModel rm = resolve_model(o, needs_oracle);

    Schedule schedule = Schedule::from_betas({rm.bounds.beta_min, rm.bounds.beta_max});
    ScheduleDiagnostics diag;
    if (algorithm == "static") {
        schedule = static_schedule(rm.bounds, theta);
    } else if (algorithm == "closed-form") {
        schedule = static_schedule_closed_form(rm.bounds, theta);
    } else if (algorithm == "tpa") {
        schedule = tpa_union(*rm.oracle, rm.bounds, tpa_k, o.seed, par);
        diag.rounds = 1;
    } else {  // pseudo-tpa
        PseudoTpaResult res = pseudo_tpa(*rm.oracle, rm.bounds, theta, o.seed, par);
        schedule = res.schedule;
        diag.rounds = 2;
    }
    diag.length = static_cast<std::int64_t>(schedule.length());
    if (rm.oracle) diag.samples_used = static_cast<std::int64_t>(rm.oracle->total_draws());

    std::ostringstream json;
    json << "{\"length\": " << diag.length;
    if (rm.model) {
        diag.maxwidth = rm.model->maxwidth(schedule);
        diag.curvature = rm.model->curvature(schedule);
        json << ", \"maxwidth\": " << fmt17(diag.maxwidth)
             << ", \"curvature\": " << fmt17(diag.curvature);
    }
    json << ", \"samples_used\": " << diag.samples_used << ", \"rounds\": " << diag.rounds << "}";
    std::cout << json.str() << "\n";

    if (!sched_out.empty()) schedule.save(sched_out);
    return 0;
}

int cmd_exact(const CommonOpts& o, const std::string& beta_str) {
    ResolvedModel rm = resolve_model(o, /*need_oracle=*/false);
    std::ostringstream json;
    json << "{";
    if (rm.from_graph && rm.kind == ModelSpec::Kind::random_cluster) {
        RandomClusterSpec rc = rm.spec.to_random_cluster(*rm.graph);
        json << "\"log_z_rc\": " << fmt17(enumerate_rc(*rm.graph, rc));
    } else {
        if (!rm.model) throw InvalidParameter("exact needs an enumerable model source");
        const GrossGibbsModel& model = *rm.model;
        Beta at = beta_str.empty() ? rm.bounds.beta_max : Beta::parse(beta_str);
        json << "\"beta\": \"" << at.str() << "\"";
        json << ", \"log_z\": " << fmt17(model.log_partition(at));
        json << ", \"log_q\": " << fmt17(model.z_gap(rm.bounds.beta_min, rm.bounds.beta_max));
        json << ", \"mean_hamiltonian\": " << fmt17(model.mean_hamiltonian(at));
        if (rm.from_graph && rm.kind == ModelSpec::Kind::ising) {
            IsingSpec ising = rm.spec.to_ising(*rm.graph);
            json << ", \"ising_rc_identity_error\": "
                 << fmt17(ising_rc_identity_check(*rm.graph, ising));
            json << ", \"marginal_bound_violation\": "
                 << fmt17(ising_marginal_bound_check(*rm.graph, ising));
        }
    }
    json << "}";
    std::cout << json.str() << "\n";
    if (!o.out_file.empty()) {
        std::ofstream out(o.out_file);
        if (!out) throw IoError("cannot write report: " + o.out_file);
        out << json.str() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"black-box simulated-annealing estimation of Gibbs partition ratios"};
    app.require_subcommand(1);

    CommonOpts est_o, sched_o, exact_o;
    std::string est_algorithm = "static";
    double eps = 0.1, delta = 0.0, kappa_cap = 30.0;
    std::int64_t max_k = 1000000000;
    bool allow_infeasible = false;

    auto* est = app.add_subcommand("estimate", "estimate log Q = ln(Z(beta_max)/Z(beta_min))");
    add_common(est, est_o);
    est->add_option("--algorithm", est_algorithm, "static | three-round")
        ->check(CLI::IsMember({"static", "three-round"}));
    est->add_option("--eps", eps, "relative error target, in (0, 1/2)");
    est->add_option("--delta", delta, "failure probability: median-boost over replicas");
    est->add_option("--kappa-cap", kappa_cap, "curvature cap sizing the three-round k");
    est->add_option("--max-k", max_k, "per-segment sample budget before infeasibility");
    est->add_flag("--allow-infeasible", allow_infeasible, "run even when k exceeds the budget");

    std::string sched_algorithm = "static", sched_out;
    double theta = 0.25;
    int tpa_k = 1;
    auto* sched = app.add_subcommand("schedule", "generate a cooling schedule");
    add_common(sched, sched_o);
    sched->add_option("--algorithm", sched_algorithm, "static | closed-form | tpa | pseudo-tpa")
        ->check(CLI::IsMember({"static", "closed-form", "tpa", "pseudo-tpa"}));
    sched->add_option("--theta", theta, "width target in (0, 1]");
    sched->add_option("--tpa-k", tpa_k, "number of TPA runs to union");
    sched->add_option("--schedule-out", sched_out, "schedule file to write (one beta per line)");

    std::string exact_beta;
    auto* exact = app.add_subcommand("exact", "exact log Z / log Q by enumeration");
    add_common(exact, exact_o);
    exact->add_option("--beta", exact_beta, "evaluation point (default: beta_max)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (est->parsed())
            return cmd_estimate(est_o, est_algorithm, eps, delta, kappa_cap, max_k,
                                allow_infeasible);
        if (sched->parsed()) return cmd_schedule(sched_o, sched_algorithm, theta, tpa_k, sched_out);
        if (exact->parsed()) return cmd_exact(exact_o, exact_beta);
    } catch (const anneal::InfeasibleK& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
