#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "anneal/graph.hpp"
#include "anneal/ising.hpp"
#include "anneal/rng.hpp"

namespace anneal {

using EdgeSet = std::vector<std::uint8_t>;  // indicator per edge id

// ln w^RC_{p,lambda}(S); p_e = 0 entries force e closed (weight -inf if open).
double rc_log_weight(const Graph& g, const std::vector<double>& edge_p,
                     const std::vector<double>& vertex_lambda, const EdgeSet& s);

// Exact sampler over all 2^m subsets; builds the distribution once.
class RcExactSampler {
  public:
    RcExactSampler(const Graph& g, const RandomClusterSpec& spec);
    EdgeSet sample(Rng& rng) const;
    double probability(const EdgeSet& s) const;  // exact mu^RC(S)

  private:
    const Graph& g_;
    std::vector<double> cdf_;
    double log_z_;
    std::vector<double> log_w_;
};

// Single-bond heat-bath chain for the RC measure; edges with p_e = 0 are
// locked closed. Start state must avoid locked edges.
EdgeSet rc_glauber(const Graph& g, const std::vector<double>& edge_p,
                   const std::vector<double>& vertex_lambda, EdgeSet start, std::int64_t steps,
                   Rng& rng);

// Inner sampler contract for the field dynamics: draws from the RC measure
// with the given (tilted) edge activities, starting near `start`.
using RcInnerSampler =
    std::function<EdgeSet(const std::vector<double>& edge_p, const EdgeSet& start, Rng& rng)>;

// One field-dynamics step: sparsify with a rate-theta random set S, tilt
// p* = p/(p + theta(1-p)) on S u X (0 elsewhere), resample via `inner`.
EdgeSet field_dynamics_step(const EdgeSet& x, const Graph& g, const RandomClusterSpec& spec,
                            double theta, Rng& rng, const RcInnerSampler& inner);

// Parameter table for SampleRC; the published constants are astronomically
// conservative, so every entry can be overridden.
struct RcSamplerParams {
    double c1 = 0.0;     // 1e-27 (1 - lambda_max) p_min
    double c2 = 0.0;     // (2 / (p_min (1 - lambda_max)))^(30/(1-lambda_max)^2)
    double n0 = 0.0;     // max(1/c1, c2); brute-force below this size
    double theta = 0.0;  // c1 / ln(n/eps)
    double t = 0.0;      // c2 theta^(-2e5) ln(2n/eps) field-dynamics steps
};
RcSamplerParams rc_sampler_params(const Graph& g, const RandomClusterSpec& spec, double eps);

struct RcOverrides {
    std::optional<double> theta;
    std::optional<std::int64_t> t_steps;
    std::optional<double> n0;
    std::optional<std::int64_t> inner_steps;  // Glauber steps per inner resample
};

// SampleRC: brute force below n0, otherwise T field-dynamics steps from
// X = E with the inner resample done by sequential Glauber dynamics on the
// tilted measure. Without overrides the published T is not runnable at desk
// scale and the call is rejected with InfeasibleK.
EdgeSet sample_rc(const Graph& g, const RandomClusterSpec& spec, double eps,
                  const RcOverrides& overrides, Rng& rng);

// Edwards-Sokal coupling: each component C of (V, S) becomes all +1 with
// probability prod_{v in C} lambda_v / (1 + prod_{v in C} lambda_v).
std::vector<std::int8_t> edwards_sokal_spin(const EdgeSet& s, const Graph& g,
                                            const RandomClusterSpec& spec, Rng& rng);

}  // namespace anneal
