#include "anneal/ising.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "anneal/errors.hpp"

namespace anneal {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ln F(sigma) = sum of ln gamma_e over monochromatic edges
double log_edge_factor(const Graph& g, const std::vector<double>& edge_gamma, std::uint32_t sigma) {
    double lf = 0.0;
    const auto& edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [u, v] = edges[e];
        if (((sigma >> u) & 1u) == ((sigma >> v) & 1u)) lf += std::log(edge_gamma[e]);
    }
    return lf;
}

}  // namespace

void IsingSpec::validate(const Graph& g) const {
    if (!(slack > 0.0 && slack < 1.0)) throw InvalidParameter("slack must lie in (0, 1)");
    if (static_cast<int>(edge_gamma.size()) != g.num_edges() ||
        static_cast<int>(vertex_lambda.size()) != g.num_vertices())
        throw InvalidParameter("Ising spec size does not match the graph");
    for (double ge : edge_gamma)
        if (!(ge >= 1.0 + slack) || !std::isfinite(ge))
            throw InvalidParameter("edge activities must lie in [1 + slack, inf)");
    for (double lv : vertex_lambda)
        if (!(lv >= 0.0 && lv <= 1.0 - slack))
            throw InvalidParameter("vertex activities must lie in [0, 1 - slack]");
}

double IsingSpec::eta() const { return -1.0 / std::log1p(-slack); }

IsingModel enumerate_ising(const Graph& g, const IsingSpec& spec) {
    spec.validate(g);
    const int n = g.num_vertices();
    if (n > 20) throw TooLarge("Ising enumeration capped at 2^20 configurations");
    const double eta = spec.eta();

    std::vector<double> site_h(n);  // eta ln(1/lambda_v); +inf for lambda_v = 0
    for (int v = 0; v < n; ++v)
        site_h[v] = spec.vertex_lambda[v] == 0.0 ? std::numeric_limits<double>::infinity()
                                                 : -eta * std::log(spec.vertex_lambda[v]);

    // Real-valued Hamiltonian support: accumulate per distinct H value.
    // Configurations with H = +inf (a +1 spin on a lambda = 0 vertex) have
    // zero weight at every beta in the annealing range and are dropped.
    std::map<double, LogSumAcc> hist;
    const std::uint32_t configs = 1u << n;
    for (std::uint32_t sigma = 0; sigma < configs; ++sigma) {
        double h = 0.0;
        for (int v = 0; v < n; ++v)
            if ((sigma >> v) & 1u) h += site_h[v];
        if (std::isinf(h)) continue;
        hist[h].add(log_edge_factor(g, spec.edge_gamma, sigma));
    }
    std::vector<SupportPoint> pts;
    pts.reserve(hist.size());
    for (const auto& [x, acc] : hist) pts.push_back({x, acc.value()});

    IsingModel out{GrossGibbsModel::from_points(std::move(pts)), {}};
    out.bounds.beta_min = Beta::ninf();
    out.bounds.beta_max = Beta(-1.0 / eta);
    out.bounds.q = n;
    out.bounds.h = n * eta / std::exp(1.0);
    return out;
}

double ising_log_partition_direct(const Graph& g, const IsingSpec& spec) {
    spec.validate(g);
    const int n = g.num_vertices();
    if (n > 20) throw TooLarge("Ising enumeration capped at 2^20 configurations");
    LogSumAcc acc;
    const std::uint32_t configs = 1u << n;
    for (std::uint32_t sigma = 0; sigma < configs; ++sigma) {
        double lw = log_edge_factor(g, spec.edge_gamma, sigma);
        for (int v = 0; v < n; ++v)
            if ((sigma >> v) & 1u) {
                if (spec.vertex_lambda[v] == 0.0) {
                    lw = kNegInf;
                    break;
                }
                lw += std::log(spec.vertex_lambda[v]);
            }
        acc.add(lw);
    }
    return acc.value();
}

void RandomClusterSpec::validate(const Graph& g) const {
    if (static_cast<int>(edge_p.size()) != g.num_edges() ||
        static_cast<int>(vertex_lambda.size()) != g.num_vertices())
        throw InvalidParameter("random-cluster spec size does not match the graph");
    for (double p : edge_p)
        if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("edge probabilities must lie in (0, 1)");
    for (double lv : vertex_lambda)
        if (!(lv >= 0.0 && lv < 1.0)) throw InvalidParameter("vertex activities must lie in [0, 1)");
}

RandomClusterSpec RandomClusterSpec::from_ising(const IsingSpec& ising) {
    RandomClusterSpec rc;
    rc.edge_p.reserve(ising.edge_gamma.size());
    for (double ge : ising.edge_gamma) rc.edge_p.push_back(1.0 - 1.0 / ge);
    rc.vertex_lambda = ising.vertex_lambda;
    return rc;
}

double enumerate_rc(const Graph& g, const RandomClusterSpec& spec) {
    spec.validate(g);
    const int m = g.num_edges();
    const int n = g.num_vertices();
    if (m > 24) throw TooLarge("random-cluster enumeration capped at 2^24 subsets");
    LogSumAcc acc;
    const std::uint32_t subsets = 1u << m;
    const auto& edges = g.edges();
    for (std::uint32_t s = 0; s < subsets; ++s) {
        double lw = 0.0;
        UnionFind uf(n);
        for (int e = 0; e < m; ++e) {
            if ((s >> e) & 1u) {
                lw += std::log(spec.edge_p[e]);
                uf.unite(edges[e].first, edges[e].second);
            } else {
                lw += std::log1p(-spec.edge_p[e]);
            }
        }
        // component factor: ln(1 + prod_{v in C} lambda_v) per component
        std::vector<double> comp_log_prod(n, 0.0);
        std::vector<bool> comp_zero(n, false);
        for (int v = 0; v < n; ++v) {
            int root = uf.find(v);
            if (spec.vertex_lambda[v] == 0.0)
                comp_zero[root] = true;
            else
                comp_log_prod[root] += std::log(spec.vertex_lambda[v]);
        }
        for (int v = 0; v < n; ++v) {
            if (uf.find(v) != v) continue;
            if (!comp_zero[v]) lw += std::log1p(std::exp(comp_log_prod[v]));
        }
        acc.add(lw);
    }
    return acc.value();
}

double ising_rc_identity_check(const Graph& g, const IsingSpec& spec) {
    double log_ising = ising_log_partition_direct(g, spec);
    double log_rc = enumerate_rc(g, RandomClusterSpec::from_ising(spec));
    double log_gamma_prod = 0.0;
    for (double ge : spec.edge_gamma) log_gamma_prod += std::log(ge);
    return std::abs(std::expm1(log_ising - log_rc - log_gamma_prod));
}

double ising_marginal_bound_check(const Graph& g, const IsingSpec& spec) {
    spec.validate(g);
    const int n = g.num_vertices();
    if (n > 20) throw TooLarge("Ising enumeration capped at 2^20 configurations");
    const std::uint32_t configs = 1u << n;
    std::vector<LogSumAcc> plus(n);
    LogSumAcc total;
    for (std::uint32_t sigma = 0; sigma < configs; ++sigma) {
        double lw = log_edge_factor(g, spec.edge_gamma, sigma);
        for (int v = 0; v < n && lw != kNegInf; ++v)
            if ((sigma >> v) & 1u)
                lw = spec.vertex_lambda[v] == 0.0 ? kNegInf : lw + std::log(spec.vertex_lambda[v]);
        total.add(lw);
        for (int v = 0; v < n; ++v)
            if ((sigma >> v) & 1u) plus[v].add(lw);
    }
    double log_z = total.value();
    double worst = -std::numeric_limits<double>::infinity();
    for (int v = 0; v < n; ++v) {
        double marginal = std::exp(plus[v].value() - log_z);
        worst = std::max(worst, marginal - spec.vertex_lambda[v]);
    }
    return worst;
}

}  // namespace anneal
