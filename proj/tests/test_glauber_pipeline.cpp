#include <doctest.h>

#include <cmath>

#include "anneal/glauber.hpp"
#include "anneal/oracle.hpp"
#include "anneal/pipeline.hpp"
#include "anneal/two_spin.hpp"
#include "support/oracles.hpp"
#include "support/stats.hpp"

using namespace anneal;

namespace {
const TwoSpinSpec kHardcore{0.0, 1.0, 1.0};
}  // namespace

TEST_CASE("glauber-backed pipeline estimates hardcore P4") {
    Graph p4 = Graph::path(4);
    const std::int64_t steps = 30;

    // mixedness of the oracle's kernel, from the chain's own conditionals:
    // TV between the steps-step distribution from all-minus and the exact law
    auto model = enumerate_two_spin(p4, kHardcore);
    TwoSpinChain probe(p4, 0.0, 1.0, 1.0);
    const int states = 16;
    std::vector<std::vector<double>> kernel(states, std::vector<double>(states, 0.0));
    for (int s = 0; s < states; ++s) {
        bool valid = true;
        for (auto [u, v] : p4.edges())
            if (((s >> u) & 1) && ((s >> v) & 1)) valid = false;
        if (!valid) continue;
        std::vector<std::int8_t> spins(4);
        for (int v = 0; v < 4; ++v) spins[v] = ((s >> v) & 1) ? 1 : -1;
        probe.set_state(spins);
        for (int v = 0; v < 4; ++v) {
            double pp = probe.conditional_plus_prob(v);
            kernel[s][s | (1 << v)] += pp / 4.0;
            kernel[s][s & ~(1 << v)] += (1.0 - pp) / 4.0;
        }
    }
    std::vector<double> dist(states, 0.0);
    dist[0] = 1.0;
    for (int t = 0; t < steps; ++t) {
        std::vector<double> next(states, 0.0);
        for (int a = 0; a < states; ++a)
            for (int b = 0; b < states && dist[a] > 0.0; ++b) next[b] += dist[a] * kernel[a][b];
        dist = next;
    }
    double tv = 0.0;
    double z = std::exp(model.log_partition(Beta(0.0)));
    for (int s = 0; s < states; ++s) {
        bool valid = true;
        for (auto [u, v] : p4.edges())
            if (((s >> u) & 1) && ((s >> v) & 1)) valid = false;
        tv += std::abs(dist[s] - (valid ? 1.0 / z : 0.0));
    }
    tv *= 0.5;
    REQUIRE(tv < 1e-3);  // steps are far beyond mixing for this instance

    Bounds bounds = two_spin_bounds(p4, kHardcore, 1.0).with_paper_minimums();
    double truth = model.z_gap(bounds.beta_min, bounds.beta_max);
    const int trials = 50;
    std::vector<int> ok(trials, 0);
    Parallel par(0);
    par.run(trials, [&](std::size_t t) {
        auto oracle = oracle_from_glauber_two_spin(p4, kHardcore, false, steps,
                                                   mix64(7000, t));
        auto report = estimate_nonadaptive(*oracle, bounds, 0.2,
                                           static_cast<std::uint64_t>(t), Parallel::sequential());
        ok[t] = std::abs(report.log_q_hat - truth) <= 0.2 ? 1 : 0;
    });
    int successes = 0;
    for (int v : ok) successes += v;
    CHECK(successes >= 30);  // >= 60% of 50
}
