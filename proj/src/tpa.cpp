#include "anneal/tpa.hpp"

#include <cmath>

#include "anneal/errors.hpp"
#include "anneal/static_schedule.hpp"

namespace anneal {

namespace {

constexpr std::int64_t kStepCap = 1'000'000'000;  // termination guard

// beta - eta/x with the X = 0 convention beta - eta/0 = -inf.
Beta tpa_jump(Beta beta, double eta, double x) {
    if (x == 0.0 || beta.is_ninf()) return Beta::ninf();
    return Beta(beta.value() - eta / x);
}

}  // namespace

Schedule tpa_run(GibbsOracle& oracle, const Bounds& bounds, std::uint64_t seed,
                 std::uint64_t stream_base) {
    bounds.validate(/*paper_minimums=*/false);
    Rng rng(mix64(seed, 0x7060a));
    std::vector<Beta> visited;
    Beta beta_i = bounds.beta_max;
    std::uint64_t stream = stream_base;
    for (std::int64_t i = 0;; ++i) {
        if (i >= kStepCap) throw IterationLimit("TPA walk exceeded the step cap");
        visited.push_back(beta_i);
        double x = oracle.draw(beta_i, 1, stream++)[0];
        double eta = rng.exponential();
        Beta beta_next = tpa_jump(beta_i, eta, x);
        if (beta_next <= bounds.beta_min) break;
        beta_i = beta_next;
    }
    visited.push_back(bounds.beta_min);
    return Schedule::from_betas(std::move(visited));
}

Schedule tpa_union(GibbsOracle& oracle, const Bounds& bounds, int k, std::uint64_t seed,
                   const Parallel& par, std::uint64_t stream_base) {
    if (k < 1) throw InvalidParameter("tpa_union requires k >= 1");
    std::vector<Schedule> runs;
    runs.reserve(k);
    for (int j = 0; j < k; ++j)
        runs.push_back(Schedule::from_betas({bounds.beta_min, bounds.beta_max}));
    par.run(static_cast<std::size_t>(k), [&](std::size_t j) {
        // disjoint stream blocks per run; runs are independent
        runs[j] = tpa_run(oracle, bounds, mix64(seed, j + 1),
                          stream_base + (static_cast<std::uint64_t>(j) << 32));
    });
    std::vector<Beta> all;
    for (const auto& r : runs)
        for (const auto& b : r.betas()) all.push_back(b);
    return Schedule::from_betas(std::move(all));
}

PseudoTpaResult pseudo_tpa(GibbsOracle& oracle, const Bounds& bounds, double theta,
                           std::uint64_t seed, const Parallel& par, std::uint64_t stream_base) {
    if (!(theta > 0.0 && theta <= 1.0)) throw InvalidParameter("theta must lie in (0, 1]");
    bounds.validate(/*paper_minimums=*/false);

    const int d = 2;
    const double theta_grid = 0.25;
    const int k = static_cast<int>(std::ceil(8.0 / theta));

    PseudoTpaResult res;
    res.k = k;
    Schedule grid = static_schedule(bounds, theta_grid);
    res.grid_length = static_cast<std::int64_t>(grid.length());
    auto betas = grid.betas();
    const std::size_t t = betas.size() - 1;  // grid is beta_0 .. beta_t

    // Round one: thin the grid. Interior point beta_i survives with
    // probability 1 - e^{-(X_1+...+X_d)(beta_{i+1}-beta_i)}, X_j ~ mu_{beta_{i+1}}.
    std::vector<std::uint8_t> keep(t >= 1 ? t - 1 : 0, 0);
    par.run(keep.size(), [&](std::size_t idx) {
        std::size_t i = idx + 1;  // interior index 1..t-1
        auto xs = oracle.draw(betas[i + 1], d, stream_base + idx);
        double sum = xs[0] + xs[1];
        double gap = betas[i + 1].value() - betas[i].value();
        double p_keep = -std::expm1(-sum * gap);
        Rng coin(mix64(seed, 0xA1, idx));
        keep[idx] = coin.bernoulli(p_keep) ? 1 : 0;
    });
    res.round1_draws = static_cast<std::int64_t>(keep.size()) * d;

    std::vector<Beta> b_prime;
    b_prime.push_back(bounds.beta_min);
    for (std::size_t idx = 0; idx < keep.size(); ++idx)
        if (keep[idx]) b_prime.push_back(betas[idx + 1]);
    b_prime.push_back(bounds.beta_max);
    res.admitted = b_prime;

    // Round two: refine each kept point with k exponential jumps
    // beta_i - eta_j / Y_j, Y_j ~ mu_{beta_i}.
    const std::uint64_t r2_base = stream_base + (1ULL << 40);
    std::vector<std::vector<Beta>> candidates(b_prime.size());
    par.run(b_prime.size(), [&](std::size_t i) {
        Beta b = b_prime[i];
        auto ys = oracle.draw(b, static_cast<std::size_t>(k), r2_base + i);
        Rng exp_rng(mix64(seed, 0xA2, i));
        auto& out = candidates[i];
        out.reserve(k + 1);
        out.push_back(b);
        for (int j = 0; j < k; ++j) out.push_back(tpa_jump(b, exp_rng.exponential(), ys[j]));
    });
    res.round2_draws = static_cast<std::int64_t>(b_prime.size()) * k;

    std::vector<Beta> final_pts{bounds.beta_min, bounds.beta_max};
    for (const auto& group : candidates)
        for (const auto& b : group)
            if (bounds.beta_min <= b && b <= bounds.beta_max) final_pts.push_back(b);
    res.schedule = Schedule::from_betas(std::move(final_pts));
    return res;
}

}  // namespace anneal
