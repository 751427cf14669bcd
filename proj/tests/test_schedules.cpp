#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "anneal/errors.hpp"
#include "anneal/oracle.hpp"
#include "anneal/static_schedule.hpp"
#include "anneal/tpa.hpp"
#include "support/oracles.hpp"
#include "support/stats.hpp"

using namespace anneal;
using testsupport::exact_bounds;
using testsupport::random_model;

namespace {

Bounds make_bounds(double q, double h, Beta bmin, Beta bmax) { return Bounds{q, h, bmin, bmax}; }

GrossGibbsModel unit_line_model() {
    // single point at x = 1: z(beta) = beta
    return GrossGibbsModel::from_points({{1.0, 0.0}});
}

}  // namespace

TEST_CASE("static schedule hand traces") {
    // q=2, h=2, theta=1 on [0,1]: 1 -> 0.5 -> 0 -> -0.5 (cut), dedup the 0
    auto s = static_schedule(make_bounds(2, 2, Beta(0.0), Beta(1.0)), 1.0);
    REQUIRE(s.length() == 3);
    CHECK(s[0].value() == doctest::Approx(0.0));
    CHECK(s[1].value() == doctest::Approx(0.5));
    CHECK(s[2].value() == doctest::Approx(1.0));

    // s_0 = h = 0.4 < theta/2 at i = 0: immediately {beta_min, beta_max}
    auto t = static_schedule(make_bounds(2, 0.4, Beta(0.0), Beta(1.0)), 1.0);
    REQUIRE(t.length() == 2);
    CHECK(t[0].value() == 0.0);
    CHECK(t[1].value() == 1.0);
}

TEST_CASE("first phase covers [beta_max - q/h, beta_max] in <= ceil(q/theta) steps") {
    double h = 1e6, q = 2.0, theta = 1.0;
    auto s = static_schedule(make_bounds(q, h, Beta(-50.0), Beta(0.0)), theta);
    std::int64_t inside = 0;
    for (auto b : s.betas())
        if (b.value() >= -q / h - 1e-15) ++inside;
    CHECK(inside <= static_cast<std::int64_t>(std::ceil(q / theta)) + 1);
    CHECK(s.back().value() == 0.0);
}

TEST_CASE("closed form matches the iterative schedule on a random grid") {
    Rng rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        double q = 2.0 + 30.0 * rng.uniform01();
        double h = 2.0 + std::exp(8.0 * rng.uniform01());
        double theta = 0.02 + 0.98 * rng.uniform01();
        double bmax = 4.0 * rng.uniform01() - 2.0;
        Beta bmin = rng.uniform01() < 0.3 ? Beta::ninf() : Beta(bmax - 1.0 - 20.0 * rng.uniform01());
        Bounds bounds = make_bounds(q, h, bmin, Beta(bmax));

        Schedule it = static_schedule(bounds, theta);
        Schedule cf = static_schedule_closed_form(bounds, theta);
        REQUIRE(it.length() == cf.length());
        for (std::size_t i = 0; i < it.length(); ++i) {
            if (it[i].is_ninf()) {
                CHECK(cf[i].is_ninf());
                continue;
            }
            double tol = 1e-9 * std::max(1.0, std::abs(it[i].value()));
            CHECK(std::abs(it[i].value() - cf[i].value()) <= tol);
        }
        CHECK(cf.back().value() == bmax);  // phase-1 formula at i = 0
    }
}

TEST_CASE("closed form reproduces the hand trace") {
    auto s = static_schedule_closed_form(make_bounds(2, 2, Beta(0.0), Beta(1.0)), 1.0);
    REQUIRE(s.length() == 3);
    CHECK(s[0].value() == doctest::Approx(0.0));
    CHECK(s[1].value() == doctest::Approx(0.5));
    CHECK(s[2].value() == doctest::Approx(1.0));
}

TEST_CASE("maxwidth <= theta under exact bounds") {
    Rng rng(103);
    for (int trial = 0; trial < 60; ++trial) {
        auto m = random_model(rng);
        Beta bmax(2.5 * rng.uniform01());
        Beta bmin = rng.uniform01() < 0.4 ? Beta::ninf() : Beta(bmax.value() - 2.0 - 8.0 * rng.uniform01());
        Bounds bounds = exact_bounds(m, bmin, bmax);
        if (bounds.q <= 0.0) continue;
        double theta = 0.05 + 0.95 * rng.uniform01();
        Schedule s = static_schedule(bounds, theta);
        CHECK(m.maxwidth(s) <= theta + 1e-9);
    }
}

TEST_CASE("length bound len <= 10 q ln(h/theta)/theta + 4") {
    Rng rng(107);
    for (int trial = 0; trial < 200; ++trial) {
        double q = 2.0 + 48.0 * rng.uniform01();
        double h = 2.0 + std::exp(12.0 * rng.uniform01());
        double theta = 0.02 + 0.98 * rng.uniform01();
        Bounds bounds = make_bounds(q, h, Beta::ninf(), Beta(1.0));
        Schedule s = static_schedule(bounds, theta);
        double cap = 10.0 * q * std::log(h / theta) / theta + 4.0;
        CHECK(static_cast<double>(s.length()) <= cap);
    }
}

TEST_CASE("static schedule rejects bad theta") {
    Bounds b = make_bounds(2, 2, Beta(0.0), Beta(1.0));
    CHECK_THROWS_AS(static_schedule(b, 0.0), InvalidParameter);
    CHECK_THROWS_AS(static_schedule(b, 1.5), InvalidParameter);
    CHECK_THROWS_AS(static_schedule_closed_form(b, -0.1), InvalidParameter);
}

TEST_CASE("tpa z-increments are unit exponentials") {
    auto m = unit_line_model();
    ExactOracle oracle(m, 7);
    // Wide range so the first hop is effectively never censored by the
    // beta_min cut; later hops are conditioned on not having crossed yet,
    // so only the first hop of each run is collected.
    Bounds bounds = make_bounds(12.0, 1.0, Beta(0.0), Beta(12.0));

    std::vector<double> gaps;
    gaps.reserve(10000);
    for (std::uint64_t run = 0; run < 10000; ++run) {
        Schedule s = tpa_run(oracle, bounds, run, run << 20);
        auto betas = s.betas();
        REQUIRE(betas.size() >= 3);
        gaps.push_back(betas[betas.size() - 1].value() - betas[betas.size() - 2].value());
    }
    double d = teststat::ks_statistic(gaps, teststat::exp1_cdf);
    CHECK(d < teststat::ks_critical_01(gaps.size()));
}

TEST_CASE("tpa with an all-zero oracle returns the trivial schedule") {
    auto m = GrossGibbsModel::from_points({{0.0, 0.0}});
    ExactOracle oracle(m, 3);
    Bounds bounds = make_bounds(2.0, 2.0, Beta(-4.0), Beta(1.0));
    Schedule s = tpa_run(oracle, bounds, 5);
    REQUIRE(s.length() == 2);
    CHECK(s[0].value() == -4.0);
    CHECK(s[1].value() == 1.0);
    CHECK(oracle.total_draws() == 1);
}

TEST_CASE("tpa interior point count matches z(beta_min, beta_max)") {
    auto m = unit_line_model();
    ExactOracle oracle(m, 11);
    Bounds bounds = make_bounds(5.0, 1.0, Beta(1.0), Beta(6.0));
    const int runs = 400;
    std::vector<double> counts;
    for (int r = 0; r < runs; ++r) {
        Schedule s = tpa_run(oracle, bounds, 900 + r, static_cast<std::uint64_t>(r) << 24);
        counts.push_back(static_cast<double>(s.length()) - 2.0);  // interior points
    }
    double z_range = 5.0;
    CHECK(std::abs(teststat::mean(counts) - z_range) <= 3.0 * std::sqrt(z_range / runs));
}

TEST_CASE("tpa union is a rate-k Poisson process in z-space") {
    auto m = unit_line_model();
    ExactOracle oracle(m, 13);
    Bounds bounds = make_bounds(4.0, 1.0, Beta(0.0), Beta(4.0));
    const int k = 4, runs = 500;
    std::vector<double> counts;
    for (int r = 0; r < runs; ++r) {
        Schedule s = tpa_union(oracle, bounds, k, 17 + r, Parallel::sequential(),
                               static_cast<std::uint64_t>(r) << 40);
        counts.push_back(static_cast<double>(s.length()) - 2.0);
    }
    double expect = k * 4.0;
    CHECK(std::abs(teststat::mean(counts) - expect) <= 3.0 * std::sqrt(expect / runs));

    Schedule single = tpa_union(oracle, bounds, 1, 4242, Parallel::sequential(), 7777ULL << 32);
    Schedule direct = tpa_run(oracle, bounds, mix64(4242, 1), 7777ULL << 32);
    REQUIRE(single.length() == direct.length());
    for (std::size_t i = 0; i < single.length(); ++i) CHECK(single[i] == direct[i]);
}

TEST_CASE("tpa union widths satisfy E[W] <= 2/k at probe points") {
    auto m = unit_line_model();
    ExactOracle oracle(m, 19);
    Bounds bounds = make_bounds(4.0, 1.0, Beta(0.0), Beta(4.0));
    const int k = 8, runs = 2000;
    std::vector<Beta> probes{Beta(0.8), Beta(2.0), Beta(3.3)};
    for (Beta x : probes) {
        std::vector<double> widths;
        for (int r = 0; r < runs; ++r) {
            Schedule s = tpa_union(oracle, bounds, k, 23 + r, Parallel::sequential(),
                                   static_cast<std::uint64_t>(r) << 40);
            widths.push_back(m.width(s, x).total());
        }
        CHECK(teststat::mean(widths) <= 2.0 / k + 3.0 * teststat::std_error(widths));
    }
}

TEST_CASE("pseudo-tpa admission probability is 1 - e^{-2 z(b_i, b_{i+1})}") {
    auto m = unit_line_model();
    ExactOracle oracle(m, 29);
    Bounds bounds = make_bounds(2.0, 2.0, Beta(0.0), Beta(2.0));
    // grid point beta_1 and its gap; z(beta) = beta so z-gap = beta-gap
    Schedule grid = static_schedule(bounds, 0.25);
    REQUIRE(grid.length() >= 4);
    double gap = grid[2].value() - grid[1].value();
    double p_expect = -std::expm1(-2.0 * gap);

    const int trials = 10000;
    int admitted = 0;
    for (int t = 0; t < trials; ++t) {
        auto res = pseudo_tpa(oracle, bounds, 0.5, 1000 + t, Parallel::sequential(),
                              static_cast<std::uint64_t>(t) << 42);
        for (const auto& b : res.admitted)
            if (b == grid[1]) ++admitted;
    }
    double freq = static_cast<double>(admitted) / trials;
    double sigma = std::sqrt(p_expect * (1.0 - p_expect) / trials);
    CHECK(std::abs(freq - p_expect) <= 3.5 * sigma);
}

TEST_CASE("pseudo-tpa: E[len(B')] <= 2q + 2 and transcript counts are exact") {
    Rng rng(211);
    auto m = random_model(rng);
    Beta bmax(1.5);
    Bounds bounds = exact_bounds(m, Beta::ninf(), bmax);
    ExactOracle oracle(m, 31);

    const int runs = 2000;
    std::vector<double> lens;
    for (int r = 0; r < runs; ++r) {
        std::uint64_t before = oracle.total_draws();
        auto res = pseudo_tpa(oracle, bounds, 0.4, 3000 + r, Parallel::sequential(),
                              static_cast<std::uint64_t>(r) << 42);
        lens.push_back(static_cast<double>(res.admitted.size()));
        CHECK(res.round1_draws == 2 * (res.grid_length - 2));
        CHECK(res.round2_draws ==
              static_cast<std::int64_t>(res.admitted.size()) * res.k);
        CHECK(oracle.total_draws() - before ==
              static_cast<std::uint64_t>(res.round1_draws + res.round2_draws));
        CHECK(res.schedule.front() == bounds.beta_min);
        CHECK(res.schedule.back() == bounds.beta_max);
    }
    CHECK(teststat::mean(lens) <= 2.0 * bounds.q + 2.0 + 3.0 * teststat::std_error(lens));
}

TEST_CASE("pseudo-tpa clips candidates to the annealing range") {
    auto m = GrossGibbsModel::from_points({{0.0, 0.0}, {1.0, 0.0}});
    ExactOracle oracle(m, 37);
    Bounds bounds = make_bounds(2.0, 2.0, Beta(-2.0), Beta(2.0));
    for (int t = 0; t < 50; ++t) {
        auto res = pseudo_tpa(oracle, bounds, 0.5, t, Parallel::sequential(),
                              static_cast<std::uint64_t>(t) << 42);
        for (const auto& b : res.schedule.betas()) {
            CHECK(b >= bounds.beta_min);
            CHECK(b <= bounds.beta_max);
        }
    }
    CHECK_THROWS_AS(pseudo_tpa(oracle, bounds, 0.0, 1, Parallel::sequential()), InvalidParameter);
    CHECK_THROWS_AS(pseudo_tpa(oracle, bounds, 1.0001, 1, Parallel::sequential()), InvalidParameter);
}

TEST_CASE("schedule files round-trip, including -inf") {
    namespace fs = std::filesystem;
    auto path = fs::temp_directory_path() / "anneal_sched_test.txt";
    Schedule s = Schedule::from_betas({Beta::ninf(), Beta(-1.25), Beta(0.5), Beta(2.0)});
    s.save(path.string());
    Schedule back = Schedule::load(path.string());
    REQUIRE(back.length() == s.length());
    CHECK(back[0].is_ninf());
    for (std::size_t i = 1; i < s.length(); ++i) CHECK(back[i].value() == s[i].value());
    fs::remove(path);
}

TEST_CASE("schedule dedup tolerance and validation") {
    Schedule s = Schedule::from_betas({Beta(0.0), Beta(1e-13), Beta(1.0)});
    CHECK(s.length() == 2);
    CHECK_THROWS_AS(Schedule::from_betas({Beta(1.0)}), InvalidParameter);
    CHECK_THROWS_AS(Schedule::from_betas({Beta(1.0), Beta(1.0 + 1e-14)}), InvalidParameter);
}
