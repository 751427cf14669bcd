#include "anneal/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "anneal/errors.hpp"
#include "anneal/rng.hpp"
#include "anneal/static_schedule.hpp"
#include "anneal/tpa.hpp"

namespace anneal {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double schedule_theta(const Bounds& bounds) {
    // theta = 1/(4 ln h); h >= 2 keeps this inside (0, 1]
    return std::min(1.0, 1.0 / (4.0 * std::log(bounds.h)));
}

// Stream-space layout: PPE gets the low block, PseudoTPA blocks above it,
// boost replicas a disjoint high slice each.
constexpr std::uint64_t kPseudoTpaStreams = 1ULL << 42;

void check_k_feasible(std::int64_t k, const EstimatorOptions& options) {
    if (options.allow_infeasible || k <= options.max_k) return;
    std::ostringstream msg;
    msg << "required per-segment sample count k = " << k << " exceeds the budget of "
        << options.max_k << " (pass an explicit override to run anyway)";
    throw InfeasibleK(msg.str(), static_cast<double>(k));
}

}  // namespace

std::string EstimateReport::to_json() const {
    std::ostringstream out;
    out << "{";
    out << "\"log_q_hat\": " << fmt17(log_q_hat) << ", ";
    out << "\"schedule\": [";
    bool first = true;
    for (const auto& b : schedule.betas()) {
        if (!first) out << ", ";
        first = false;
        if (b.is_ninf())
            out << "\"-inf\"";
        else
            out << fmt17(b.value());
    }
    out << "], ";
    out << "\"samples_total\": " << samples_total << ", ";
    out << "\"samples_by_round\": [";
    for (std::size_t i = 0; i < samples_by_round.size(); ++i) {
        if (i) out << ", ";
        out << samples_by_round[i];
    }
    out << "], ";
    out << "\"epsilon\": " << fmt17(epsilon) << ", ";
    out << "\"algorithm\": \"" << algorithm << "\", ";
    out << "\"seed\": " << seed << ", ";
    out << "\"kappa_cap\": " << fmt17(kappa_cap);
    out << "}";
    return out.str();
}

NonadaptivePlan nonadaptive_plan(const Bounds& bounds, double eps) {
    bounds.validate();
    NonadaptivePlan plan;
    plan.schedule = static_schedule(bounds, schedule_theta(bounds));
    plan.k = required_k(3.0, eps);
    plan.samples_total = 2 * plan.k * static_cast<std::int64_t>(plan.schedule.length() - 1);
    return plan;
}

EstimateReport estimate_nonadaptive(GibbsOracle& oracle, const Bounds& bounds, double eps,
                                    std::uint64_t seed, const Parallel& par) {
    NonadaptivePlan plan = nonadaptive_plan(bounds, eps);
    PpeResult ppe = ppe_estimate(oracle, plan.schedule, plan.k, par, /*stream_base=*/0);

    EstimateReport report;
    report.log_q_hat = ppe.log_q_hat;
    report.schedule = plan.schedule;
    report.samples_by_round = {plan.samples_total};
    report.samples_total = plan.samples_total;
    report.epsilon = eps;
    report.algorithm = "static";
    report.seed = seed;
    report.kappa_cap = 3.0;
    return report;
}

EstimateReport estimate_three_round(GibbsOracle& oracle, const Bounds& bounds, double eps,
                                    std::uint64_t seed, const Parallel& par,
                                    const EstimatorOptions& options) {
    bounds.validate();
    if (!(eps > 0.0 && eps < 0.5)) throw InvalidParameter("eps must lie in (0, 1/2)");
    std::int64_t k = required_k(options.kappa_cap, eps);
    check_k_feasible(k, options);

    PseudoTpaResult schedule = pseudo_tpa(oracle, bounds, schedule_theta(bounds), seed, par,
                                          /*stream_base=*/0);
    std::int64_t ppe_samples =
        2 * k * static_cast<std::int64_t>(schedule.schedule.length() - 1);
    PpeResult ppe =
        ppe_estimate(oracle, schedule.schedule, k, par, /*stream_base=*/kPseudoTpaStreams);

    EstimateReport report;
    report.log_q_hat = ppe.log_q_hat;
    report.schedule = schedule.schedule;
    report.samples_by_round = {schedule.round1_draws, schedule.round2_draws, ppe_samples};
    report.samples_total = schedule.round1_draws + schedule.round2_draws + ppe_samples;
    report.epsilon = eps;
    report.algorithm = "three-round";
    report.seed = seed;
    report.kappa_cap = options.kappa_cap;
    return report;
}

EstimateReport median_boost(const std::function<EstimateReport(int replica)>& run, double delta,
                            const Parallel& par) {
    if (!(delta > 0.0 && delta < 0.3)) throw InvalidParameter("delta must lie in (0, 0.3)");
    std::int64_t r = static_cast<std::int64_t>(std::ceil(24.0 * std::log(1.0 / delta)));
    if (r < 1) r = 1;
    if (r % 2 == 0) ++r;  // odd count: the median is a single replica

    std::vector<EstimateReport> reports(static_cast<std::size_t>(r));
    par.run(reports.size(), [&](std::size_t i) { reports[i] = run(static_cast<int>(i)); });

    std::vector<std::size_t> order(reports.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return reports[a].log_q_hat < reports[b].log_q_hat;
    });
    EstimateReport result = reports[order[order.size() / 2]];
    result.samples_total = 0;
    std::fill(result.samples_by_round.begin(), result.samples_by_round.end(), 0);
    for (const auto& rep : reports) {
        result.samples_total += rep.samples_total;
        for (std::size_t j = 0; j < result.samples_by_round.size() && j < rep.samples_by_round.size(); ++j)
            result.samples_by_round[j] += rep.samples_by_round[j];
    }
    return result;
}

}  // namespace anneal
