#pragma once

#include "anneal/model.hpp"
#include "anneal/schedule.hpp"

namespace anneal {

// Non-adaptive cooling schedule: walk down from beta_max with steps
// theta / min{h, q/(beta_max - beta_i)} until the derivative cap drops below
// theta/2 or beta_min is crossed. Guarantees maxwidth <= theta whenever
// (q, h) are valid bounds for the sampled model.
Schedule static_schedule(const Bounds& bounds, double theta);

// Same schedule by direct evaluation of the two per-phase closed forms
// (constant steps of theta/h, then geometric gap growth by 1 + theta/q),
// with the termination index located by a predicate scan. Element-wise equal
// to the iterative construction.
Schedule static_schedule_closed_form(const Bounds& bounds, double theta);

}  // namespace anneal
