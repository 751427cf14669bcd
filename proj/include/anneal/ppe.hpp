#pragma once

#include <cstdint>
#include <vector>

#include "anneal/oracle.hpp"
#include "anneal/parallel.hpp"
#include "anneal/schedule.hpp"

namespace anneal {

// Samples per segment side required for relative error eps at curvature cap
// kappa_cap: ceil(100 (e^kappa - 1) / eps^2). Saturates at int64 max.
std::int64_t required_k(double kappa_cap, double eps);

struct PpeSegmentStats {
    int index = 0;
    double log_u = 0.0;
    double log_v = 0.0;
    std::int64_t k = 0;
    double relvar_u = 0.0;  // empirical relative variance of the U_{i,j}
    double relvar_v = 0.0;
};

struct PpeResult {
    double log_q_hat = 0.0;
    std::vector<PpeSegmentStats> segments;
};

// Paired Product Estimator: per segment i draw k X's from mu_{beta_i} and k
// Y's from mu_{beta_{i+1}}, form U_i = mean exp(+gap/2 X), V_i = mean
// exp(-gap/2 Y), and return log(prod U / prod V). All accumulation is in log
// space; a -inf first segment uses the 0 * inf = 0 convention so U_0 = 1
// exactly. Throws AllMassLost if some V_i receives no mass at all.
PpeResult ppe_estimate(GibbsOracle& oracle, const Schedule& schedule, std::int64_t k,
                       const Parallel& par, std::uint64_t stream_base = 0);

}  // namespace anneal
