#include "anneal/rc_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "anneal/errors.hpp"

namespace anneal {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double component_factor(const Graph& g, const std::vector<double>& vertex_lambda,
                        const EdgeSet& s) {
    const int n = g.num_vertices();
    UnionFind uf(n);
    const auto& edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (s[e]) uf.unite(edges[e].first, edges[e].second);
    std::vector<double> log_prod(n, 0.0);
    std::vector<bool> zero(n, false);
    for (int v = 0; v < n; ++v) {
        int root = uf.find(v);
        if (vertex_lambda[v] == 0.0)
            zero[root] = true;
        else
            log_prod[root] += std::log(vertex_lambda[v]);
    }
    double lf = 0.0;
    for (int v = 0; v < n; ++v) {
        if (uf.find(v) != v) continue;
        if (!zero[v]) lf += std::log1p(std::exp(log_prod[v]));
    }
    return lf;
}

}  // namespace

double rc_log_weight(const Graph& g, const std::vector<double>& edge_p,
                     const std::vector<double>& vertex_lambda, const EdgeSet& s) {
    double lw = 0.0;
    for (std::size_t e = 0; e < edge_p.size(); ++e) {
        if (s[e]) {
            if (edge_p[e] <= 0.0) return kNegInf;
            lw += std::log(edge_p[e]);
        } else {
            lw += std::log1p(-edge_p[e]);
        }
    }
    return lw + component_factor(g, vertex_lambda, s);
}

RcExactSampler::RcExactSampler(const Graph& g, const RandomClusterSpec& spec) : g_(g) {
    spec.validate(g);
    const int m = g.num_edges();
    if (m > 24) throw TooLarge("random-cluster enumeration capped at 2^24 subsets");
    const std::uint32_t subsets = 1u << m;
    log_w_.resize(subsets);
    LogSumAcc acc;
    EdgeSet s(m, 0);
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
        for (int e = 0; e < m; ++e) s[e] = (mask >> e) & 1u;
        log_w_[mask] = rc_log_weight(g, spec.edge_p, spec.vertex_lambda, s);
        acc.add(log_w_[mask]);
    }
    log_z_ = acc.value();
    cdf_.resize(subsets);
    double run = 0.0;
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
        run += std::exp(log_w_[mask] - log_z_);
        cdf_[mask] = run;
    }
}

EdgeSet RcExactSampler::sample(Rng& rng) const {
    double u = rng.uniform01();
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    std::uint32_t mask = static_cast<std::uint32_t>(std::min<std::ptrdiff_t>(
        it - cdf_.begin(), static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
    EdgeSet s(g_.num_edges(), 0);
    for (int e = 0; e < g_.num_edges(); ++e) s[e] = (mask >> e) & 1u;
    return s;
}

double RcExactSampler::probability(const EdgeSet& s) const {
    std::uint32_t mask = 0;
    for (std::size_t e = 0; e < s.size(); ++e)
        if (s[e]) mask |= 1u << e;
    return std::exp(log_w_[mask] - log_z_);
}

EdgeSet rc_glauber(const Graph& g, const std::vector<double>& edge_p,
                   const std::vector<double>& vertex_lambda, EdgeSet state, std::int64_t steps,
                   Rng& rng) {
    const int m = g.num_edges();
    for (std::int64_t it = 0; it < steps; ++it) {
        int e = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
        if (edge_p[e] <= 0.0) {
            state[e] = 0;
            continue;
        }
        // heat-bath odds: p_e * factor(open) : (1-p_e) * factor(closed)
        state[e] = 1;
        double lw_open = std::log(edge_p[e]) + component_factor(g, vertex_lambda, state);
        state[e] = 0;
        double lw_closed = std::log1p(-edge_p[e]) + component_factor(g, vertex_lambda, state);
        double p_open = 1.0 / (1.0 + std::exp(lw_closed - lw_open));
        state[e] = rng.uniform01() < p_open ? 1 : 0;
    }
    return state;
}

RcSamplerParams rc_sampler_params(const Graph& g, const RandomClusterSpec& spec, double eps) {
    spec.validate(g);
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidParameter("eps must lie in (0, 1)");
    double p_min = *std::min_element(spec.edge_p.begin(), spec.edge_p.end());
    double l_max = *std::max_element(spec.vertex_lambda.begin(), spec.vertex_lambda.end());
    RcSamplerParams par;
    par.c1 = 1e-27 * (1.0 - l_max) * p_min;
    par.c2 = std::pow(2.0 / (p_min * (1.0 - l_max)), 30.0 / ((1.0 - l_max) * (1.0 - l_max)));
    par.n0 = std::max(1.0 / par.c1, par.c2);
    double n = g.num_vertices();
    par.theta = par.c1 / std::log(n / eps);
    par.t = par.c2 * std::pow(par.theta, -2e5) * std::log(2.0 * n / eps);
    return par;
}

EdgeSet field_dynamics_step(const EdgeSet& x, const Graph& g, const RandomClusterSpec& spec,
                            double theta, Rng& rng, const RcInnerSampler& inner) {
    if (!(theta > 0.0 && theta < 1.0)) throw InvalidParameter("theta must lie in (0, 1)");
    const int m = g.num_edges();
    std::vector<double> p_star(m, 0.0);
    for (int e = 0; e < m; ++e) {
        bool in_s = rng.uniform01() < theta;
        if (in_s || x[e])
            p_star[e] = spec.edge_p[e] / (spec.edge_p[e] + theta * (1.0 - spec.edge_p[e]));
    }
    return inner(p_star, x, rng);
}

EdgeSet sample_rc(const Graph& g, const RandomClusterSpec& spec, double eps,
                  const RcOverrides& overrides, Rng& rng) {
    RcSamplerParams par = rc_sampler_params(g, spec, eps);
    double n0 = overrides.n0.value_or(par.n0);
    const int m = g.num_edges();

    if (g.num_vertices() < n0) {
        RcExactSampler exact(g, spec);
        return exact.sample(rng);
    }

    double theta = overrides.theta.value_or(par.theta);
    double t_real = overrides.t_steps ? static_cast<double>(*overrides.t_steps) : par.t;
    if (t_real > 1e9)
        throw InfeasibleK(
            "published SampleRC step count is not runnable at desk scale; override theta/T/N0",
            t_real);
    std::int64_t t_steps = static_cast<std::int64_t>(t_real);

    EdgeSet x(m, 1);  // X <- E
    for (std::int64_t i = 0; i < t_steps; ++i) {
        x = field_dynamics_step(x, g, spec, theta, rng, [&](const std::vector<double>& p_star,
                                                            const EdgeSet& start, Rng& r) {
            // sequential Glauber dynamics on the tilted measure, standing in
            // for a parallel inner sampler
            std::int64_t inner_steps = overrides.inner_steps.value_or(
                static_cast<std::int64_t>(std::ceil(2.0 * m * std::log(4.0 * m * (2.0 * t_real) / eps))));
            return rc_glauber(g, p_star, spec.vertex_lambda, start, inner_steps, r);
        });
    }
    return x;
}

std::vector<std::int8_t> edwards_sokal_spin(const EdgeSet& s, const Graph& g,
                                            const RandomClusterSpec& spec, Rng& rng) {
    const int n = g.num_vertices();
    UnionFind uf(n);
    const auto& edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (s[e]) uf.unite(edges[e].first, edges[e].second);

    std::vector<double> log_prod(n, 0.0);
    std::vector<bool> zero(n, false);
    for (int v = 0; v < n; ++v) {
        int root = uf.find(v);
        if (spec.vertex_lambda[v] == 0.0)
            zero[root] = true;
        else
            log_prod[root] += std::log(spec.vertex_lambda[v]);
    }
    // component flips in root order, one uniform each
    std::vector<std::int8_t> spin_of_root(n, 0);
    for (int v = 0; v < n; ++v) {
        if (uf.find(v) != v) continue;
        double p_plus = zero[v] ? 0.0 : 1.0 / (1.0 + std::exp(-log_prod[v]));
        spin_of_root[v] = rng.uniform01() < p_plus ? 1 : -1;
    }
    std::vector<std::int8_t> spins(n);
    for (int v = 0; v < n; ++v) spins[v] = spin_of_root[uf.find(v)];
    return spins;
}

}  // namespace anneal
