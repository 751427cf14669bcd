#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "anneal/oracle.hpp"
#include "anneal/parallel.hpp"
#include "anneal/ppe.hpp"
#include "anneal/schedule.hpp"

namespace anneal {

struct EstimateReport {
    double log_q_hat = 0.0;
    Schedule schedule;
    std::int64_t samples_total = 0;
    std::vector<std::int64_t> samples_by_round;
    double epsilon = 0.0;
    std::string algorithm;
    std::uint64_t seed = 0;
    double kappa_cap = 0.0;

    std::int64_t rounds() const { return static_cast<std::int64_t>(samples_by_round.size()); }
    // Flat JSON object; numbers printed with 17 significant digits, -inf
    // schedule entries as the string "-inf".
    std::string to_json() const;
};

struct EstimatorOptions {
    double kappa_cap = 30.0;       // three-round only; the paper's e^30 default
    std::int64_t max_k = 1000000000;  // feasibility gate on per-segment samples
    bool allow_infeasible = false;
};

// Query plan of the non-adaptive estimator: a deterministic function of
// (bounds, eps) alone. theta = 1/(4 ln h), k = required_k(3, eps).
struct NonadaptivePlan {
    Schedule schedule;
    std::int64_t k = 0;
    std::int64_t samples_total = 0;  // 2 k (len - 1)
};
NonadaptivePlan nonadaptive_plan(const Bounds& bounds, double eps);

// One-round estimator: StaticSchedule(1/(4 ln h)) + PPE with kappa cap 3.
EstimateReport estimate_nonadaptive(GibbsOracle& oracle, const Bounds& bounds, double eps,
                                    std::uint64_t seed, const Parallel& par);

// Three-round estimator: PseudoTPA(1/(4 ln h)) (two adaptive rounds) + PPE
// with required_k(kappa_cap, eps). The paper's kappa_cap = 30 default makes k
// astronomically large; such runs are rejected with InfeasibleK unless
// options.allow_infeasible is set.
EstimateReport estimate_three_round(GibbsOracle& oracle, const Bounds& bounds, double eps,
                                    std::uint64_t seed, const Parallel& par,
                                    const EstimatorOptions& options = {});

// Median of ceil(24 ln(1/delta)) independent replicas (rounded up to odd so
// the median is a single run); sample counts are summed. The replica index
// passed to `run` must select disjoint stream ranges.
EstimateReport median_boost(const std::function<EstimateReport(int replica)>& run, double delta,
                            const Parallel& par);

}  // namespace anneal
