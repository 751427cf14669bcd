#pragma once

#include <cstdint>
#include <vector>

#include "anneal/model.hpp"
#include "anneal/oracle.hpp"
#include "anneal/parallel.hpp"
#include "anneal/schedule.hpp"

namespace anneal {

// One descending TPA walk: from beta_max repeatedly jump by eta/X with
// X ~ mu_{beta_i}, eta ~ Exp(1) (X = 0 jumps to -inf). The z-increments of
// the visited points are i.i.d. unit exponentials. Streams are consumed from
// `stream_base` upward, one per oracle call.
Schedule tpa_run(GibbsOracle& oracle, const Bounds& bounds, std::uint64_t seed,
                 std::uint64_t stream_base = 0);

// Union of k independent TPA runs (the TPA(k) process): a rate-k Poisson
// point process in z-space.
Schedule tpa_union(GibbsOracle& oracle, const Bounds& bounds, int k, std::uint64_t seed,
                   const Parallel& par, std::uint64_t stream_base = 0);

struct PseudoTpaResult {
    Schedule schedule;               // B'' clipped to [beta_min, beta_max]
    std::vector<Beta> admitted;      // B' (endpoints included)
    std::int64_t round1_draws = 0;   // 2 * (len(B) - 2)
    std::int64_t round2_draws = 0;   // k * len(B')
    std::int64_t grid_length = 0;    // len(B) of the theta' = 1/4 static grid
    int k = 0;                       // ceil(8/theta)
};

// Two-round local approximation of TPA(k): thin a static theta' = 1/4 grid by
// keeping each interior point with probability 1 - e^{-(X1+X2)(b_{i+1}-b_i)},
// then refine every kept point with k exponential jumps.
PseudoTpaResult pseudo_tpa(GibbsOracle& oracle, const Bounds& bounds, double theta,
                           std::uint64_t seed, const Parallel& par,
                           std::uint64_t stream_base = 0);

}  // namespace anneal
