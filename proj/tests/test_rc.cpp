#include <doctest.h>

#include <cmath>
#include <map>

#include "anneal/errors.hpp"
#include "anneal/ising.hpp"
#include "anneal/rc_sampler.hpp"
#include "support/oracles.hpp"
#include "support/stats.hpp"

using namespace anneal;

namespace {

RandomClusterSpec uniform_rc(const Graph& g, double p, double lambda) {
    RandomClusterSpec spec;
    spec.edge_p.assign(g.num_edges(), p);
    spec.vertex_lambda.assign(g.num_vertices(), lambda);
    return spec;
}

IsingSpec random_ising(const Graph& g, Rng& rng, double slack = 0.2) {
    IsingSpec spec;
    spec.slack = slack;
    for (int e = 0; e < g.num_edges(); ++e)
        spec.edge_gamma.push_back(1.0 + slack + 2.0 * rng.uniform01());
    for (int v = 0; v < g.num_vertices(); ++v)
        spec.vertex_lambda.push_back((1.0 - slack) * rng.uniform01());
    return spec;
}

int edge_mask(const EdgeSet& s) {
    int m = 0;
    for (std::size_t e = 0; e < s.size(); ++e)
        if (s[e]) m |= 1 << e;
    return m;
}

// exact Ising distribution over spin configurations, as a map sigma -> prob
std::map<int, double> exact_ising_dist(const Graph& g, const IsingSpec& spec) {
    const int n = g.num_vertices();
    std::map<int, double> dist;
    double total = 0.0;
    for (int sigma = 0; sigma < (1 << n); ++sigma) {
        double w = 1.0;
        for (int v = 0; v < n; ++v)
            if ((sigma >> v) & 1) w *= spec.vertex_lambda[v];
        for (std::size_t e = 0; e < g.edges().size(); ++e) {
            auto [u, v] = g.edges()[e];
            if (((sigma >> u) & 1) == ((sigma >> v) & 1)) w *= spec.edge_gamma[e];
        }
        dist[sigma] = w;
        total += w;
    }
    for (auto& [k, v] : dist) v /= total;
    return dist;
}

}  // namespace

TEST_CASE("random cluster enumeration") {
    // empty graph: Z = prod (1 + lambda_v)
    Graph empty(3, {});
    RandomClusterSpec spec = uniform_rc(empty, 0.5, 0.25);
    spec.edge_p.clear();
    CHECK(enumerate_rc(empty, spec) == doctest::Approx(3.0 * std::log(1.25)));

    // K2 with p = 1/2, lambda = 1/2: Z = 1.75
    Graph k2 = Graph::complete(2);
    CHECK(enumerate_rc(k2, uniform_rc(k2, 0.5, 0.5)) == doctest::Approx(std::log(1.75)));

    CHECK_THROWS_AS(uniform_rc(k2, 1.5, 0.5).validate(k2), InvalidParameter);
    CHECK_THROWS_AS(uniform_rc(k2, 0.5, 1.0).validate(k2), InvalidParameter);
}

TEST_CASE("ising / random-cluster identity") {
    Rng rng(701);
    for (const Graph& g : {Graph::cycle(3), Graph::path(4)}) {
        for (int trial = 0; trial < 5; ++trial) {
            IsingSpec spec = random_ising(g, rng);
            CHECK(ising_rc_identity_check(g, spec) <= 1e-10);
        }
    }
}

TEST_CASE("ising marginal bound") {
    // single vertex: Pr[+1] = lambda/(1+lambda) <= lambda
    Graph one(1, {});
    IsingSpec single;
    single.slack = 0.25;
    single.vertex_lambda = {0.6};
    CHECK(ising_marginal_bound_check(one, single) <= 1e-12);

    Rng rng(703);
    Graph k2 = Graph::complete(2);
    for (int trial = 0; trial < 5; ++trial)
        CHECK(ising_marginal_bound_check(k2, random_ising(k2, rng)) <= 1e-12);

    // lambda_v = 0 pins the marginal at zero
    IsingSpec zero;
    zero.slack = 0.25;
    zero.edge_gamma = {2.0};
    zero.vertex_lambda = {0.0, 0.5};
    CHECK(ising_marginal_bound_check(k2, zero) <= 1e-12);
}

TEST_CASE("rc exact sampler matches the weights") {
    Graph p3 = Graph::path(3);
    RandomClusterSpec spec = uniform_rc(p3, 0.4, 0.3);
    RcExactSampler sampler(p3, spec);

    Rng rng(707);
    const int draws = 10000;
    std::vector<std::int64_t> counts(4, 0);
    for (int i = 0; i < draws; ++i) ++counts[edge_mask(sampler.sample(rng))];
    std::vector<double> expect(4);
    for (int mask = 0; mask < 4; ++mask) {
        EdgeSet s(2, 0);
        for (int e = 0; e < 2; ++e) s[e] = (mask >> e) & 1;
        expect[mask] = sampler.probability(s);
    }
    CHECK(teststat::tv_distance(teststat::frequencies(counts), expect) <= 0.02);
}

TEST_CASE("field dynamics tilts and locks edges") {
    Graph k2 = Graph::complete(2);
    RandomClusterSpec spec = uniform_rc(k2, 0.5, 0.5);
    Rng rng(709);

    // p = 1/2, theta = 1/2 on S u X: p* = 2/3
    std::vector<double> seen_p;
    EdgeSet x{1};
    auto inner = [&](const std::vector<double>& p_star, const EdgeSet& start, Rng&) {
        seen_p = p_star;
        return start;
    };
    field_dynamics_step(x, k2, spec, 0.5, rng, inner);
    REQUIRE(seen_p.size() == 1);
    CHECK(seen_p[0] == doctest::Approx(0.5 / (0.5 + 0.5 * 0.5)));  // 2/3, e in X

    // e not in S u X: p* = 0 (the empty X forces it to hinge on S membership)
    EdgeSet empty_x{0};
    int zeros = 0, trials = 2000;
    for (int t = 0; t < trials; ++t) {
        field_dynamics_step(empty_x, k2, spec, 0.25, rng, inner);
        if (seen_p[0] == 0.0) ++zeros;
    }
    // P(e not in S) = 3/4
    CHECK(std::abs(static_cast<double>(zeros) / trials - 0.75) < 0.05);

    // theta -> 1: p* -> p and S -> E (full resample)
    field_dynamics_step(empty_x, k2, spec, 0.999999, rng, inner);
    CHECK(seen_p[0] == doctest::Approx(0.5).epsilon(1e-5));

    CHECK_THROWS_AS(field_dynamics_step(x, k2, spec, 0.0, rng, inner), InvalidParameter);
    CHECK_THROWS_AS(field_dynamics_step(x, k2, spec, 1.0, rng, inner), InvalidParameter);
}

TEST_CASE("sample_rc parameter table") {
    Graph k2 = Graph::complete(2);
    RandomClusterSpec spec = uniform_rc(k2, 0.5, 0.5);
    RcSamplerParams par = rc_sampler_params(k2, spec, 0.1);
    CHECK(par.c1 == doctest::Approx(1e-27 * 0.5 * 0.5));  // 2.5e-28
    CHECK(par.c2 == doctest::Approx(std::pow(8.0, 120.0)));
    CHECK(par.n0 == doctest::Approx(std::max(1.0 / par.c1, par.c2)));
    CHECK(par.theta == doctest::Approx(par.c1 / std::log(2.0 / 0.1)));
}

TEST_CASE("sample_rc brute-force branch is exact") {
    Graph p3 = Graph::path(3);
    RandomClusterSpec spec = uniform_rc(p3, 0.6, 0.4);
    RcExactSampler exact(p3, spec);
    Rng rng(711);
    const int draws = 10000;
    std::vector<std::int64_t> counts(4, 0);
    for (int i = 0; i < draws; ++i)
        ++counts[edge_mask(sample_rc(p3, spec, 0.1, {}, rng))];  // n < N0 always at desk scale
    std::vector<double> expect(4);
    for (int mask = 0; mask < 4; ++mask) {
        EdgeSet s(2, 0);
        for (int e = 0; e < 2; ++e) s[e] = (mask >> e) & 1;
        expect[mask] = exact.probability(s);
    }
    CHECK(teststat::tv_distance(teststat::frequencies(counts), expect) <= 0.02);
}

TEST_CASE("sample_rc without overrides is infeasible beyond the brute cutoff") {
    Graph k2 = Graph::complete(2);
    RandomClusterSpec spec = uniform_rc(k2, 0.5, 0.5);
    Rng rng(713);
    RcOverrides only_n0;
    only_n0.n0 = 0.0;  // force the dynamics branch
    CHECK_THROWS_AS(sample_rc(k2, spec, 0.1, only_n0, rng), InfeasibleK);
}

TEST_CASE("sample_rc via field dynamics matches the exact law under overrides") {
    Graph k2 = Graph::complete(2);
    RandomClusterSpec spec = uniform_rc(k2, 0.5, 0.5);
    RcExactSampler exact(k2, spec);
    Rng rng(717);
    RcOverrides ov;
    ov.n0 = 0.0;
    ov.theta = 0.5;
    ov.t_steps = 200;
    const int draws = 10000;
    std::vector<std::int64_t> counts(2, 0);
    for (int i = 0; i < draws; ++i) ++counts[edge_mask(sample_rc(k2, spec, 0.1, ov, rng))];
    std::vector<double> expect(2);
    for (int mask = 0; mask < 2; ++mask) {
        EdgeSet s{static_cast<std::uint8_t>(mask)};
        expect[mask] = exact.probability(s);
    }
    CHECK(teststat::tv_distance(teststat::frequencies(counts), expect) <= 0.05);
}

TEST_CASE("edwards-sokal component law") {
    Graph k2 = Graph::complete(2);
    Rng rng(719);

    // lambda_v = 0 in a component: all -1
    RandomClusterSpec zero = uniform_rc(k2, 0.5, 0.5);
    zero.vertex_lambda[0] = 0.0;
    EdgeSet joined{1};
    for (int t = 0; t < 200; ++t) {
        auto spins = edwards_sokal_spin(joined, k2, zero, rng);
        CHECK(spins[0] == -1);
        CHECK(spins[1] == -1);
    }

    // singleton component with lambda = 1: a fair coin
    RandomClusterSpec fair = uniform_rc(k2, 0.5, 1.0);  // lambda = 1 exercised directly
    EdgeSet separate{0};
    int plus = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) plus += edwards_sokal_spin(separate, k2, fair, rng)[0] > 0;
    CHECK(std::abs(static_cast<double>(plus) / trials - 0.5) <= 3.0 * std::sqrt(0.25 / trials));
}

TEST_CASE("rc-then-spin composite reproduces the exact Ising law") {
    Rng outer(727);
    for (const Graph& g : {Graph::complete(2), Graph::path(3)}) {
        IsingSpec ising = random_ising(g, outer);
        RandomClusterSpec rc = RandomClusterSpec::from_ising(ising);
        auto truth = exact_ising_dist(g, ising);

        Rng rng(731);
        const int draws = 10000;
        std::map<int, std::int64_t> counts;
        for (int i = 0; i < draws; ++i) {
            EdgeSet s = sample_rc(g, rc, 0.1, {}, rng);  // brute-force branch
            auto spins = edwards_sokal_spin(s, g, rc, rng);
            int code = 0;
            for (std::size_t v = 0; v < spins.size(); ++v)
                if (spins[v] > 0) code |= 1 << v;
            ++counts[code];
        }
        double tv = 0.0;
        for (const auto& [sigma, p] : truth)
            tv += std::abs(static_cast<double>(counts[sigma]) / draws - p);
        CHECK(0.5 * tv <= 0.02);
    }
}
