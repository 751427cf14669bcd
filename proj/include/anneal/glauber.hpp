#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "anneal/graph.hpp"
#include "anneal/oracle.hpp"
#include "anneal/rng.hpp"
#include "anneal/two_spin.hpp"

namespace anneal {

// Single-site heat-bath chain for the 2-spin system at vertex activity
// lambda_act. Each step picks a uniform vertex and resamples its spin from
// the conditional distribution.
class TwoSpinChain {
  public:
    TwoSpinChain(const Graph& g, double gamma1, double gamma2, double lambda_act,
                 bool start_all_plus = false);

    void step(Rng& rng);
    void run(std::int64_t steps, Rng& rng);
    void reset(bool all_plus);
    void set_state(const std::vector<std::int8_t>& spins);

    const std::vector<std::int8_t>& spins() const { return spins_; }
    int num_plus() const { return num_plus_; }

    // P(sigma_v = +1 | rest); exposed for exact detailed-balance checks.
    double conditional_plus_prob(int v) const;

  private:
    const Graph& g_;
    double log_gamma1_, log_gamma2_, log_lambda_;
    std::vector<double> prob_table_;  // P(+1) by (k_plus, k_minus), (D+1)^2 entries
    int table_stride_;
    std::vector<std::int8_t> spins_;  // +1 / -1
    int num_plus_;
};

// Edge heat-bath chain for the monomer-dimer model at activity lambda: pick
// a uniform edge; if addable (endpoints uncovered elsewhere) resample its
// membership with odds lambda : 1, dropping it if blocked.
class MatchingChain {
  public:
    MatchingChain(const Graph& g, double lambda_act);

    void step(Rng& rng);
    void run(std::int64_t steps, Rng& rng);
    void reset();
    void set_state(const std::vector<std::uint8_t>& in_matching);

    const std::vector<std::uint8_t>& in_matching() const { return in_matching_; }
    int matching_size() const { return size_; }

    // P(e in M | rest) for the heat-bath update; 0 when blocked.
    double conditional_in_prob(int e) const;

  private:
    const Graph& g_;
    double lambda_;
    std::vector<std::uint8_t> in_matching_;
    std::vector<int> cover_;  // per-vertex count of incident matched edges
    int size_;
};

// Convenience wrappers matching the chain-as-sampler usage.
std::vector<std::int8_t> glauber_two_spin(const Graph& g, const TwoSpinSpec& spec, Beta beta,
                                          std::int64_t steps, Rng& rng);
std::vector<std::uint8_t> glauber_matchings(const Graph& g, double lambda, std::int64_t steps,
                                            Rng& rng);

// Documented heuristic when no mixing-time input is available: 10 s ln(s)
// sweeps over s sites.
std::int64_t default_glauber_steps(int sites);

// GibbsOracle realized by restarted Glauber chains: each draw runs a fresh
// chain from the ground configuration for steps_per_sample single-site
// updates and reports the Hamiltonian of the final state. First-interval
// annealing maps beta to activity e^beta (flipped: e^-beta, H = n - n+).
std::unique_ptr<GibbsOracle> oracle_from_glauber_two_spin(const Graph& g, const TwoSpinSpec& spec,
                                                          bool flipped, std::int64_t steps_per_sample,
                                                          std::uint64_t seed);
std::unique_ptr<GibbsOracle> oracle_from_glauber_matchings(const Graph& g,
                                                           std::int64_t steps_per_sample,
                                                           std::uint64_t seed);

}  // namespace anneal
