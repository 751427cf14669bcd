#include "anneal/two_spin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "anneal/errors.hpp"

namespace anneal {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::uint32_t kMaxConfigBits = 20;  // 2^20 configurations

// ln(g^count) with the 0^0 = 1 convention.
double pow_log(double g, int count) {
    if (count == 0) return 0.0;
    if (g == 0.0) return kNegInf;
    return count * std::log(g);
}

}  // namespace

void TwoSpinSpec::validate() const {
    if (!(gamma1 >= 0.0 && gamma1 <= gamma2 && gamma2 > 0.0))
        throw InvalidParameter("two-spin requires 0 <= gamma1 <= gamma2, gamma2 > 0");
    if (!(lambda > 0.0)) throw InvalidParameter("two-spin requires lambda > 0");
    if (!std::isfinite(gamma2) || !std::isfinite(lambda))
        throw InvalidParameter("two-spin parameters must be finite");
}

GrossGibbsModel enumerate_two_spin(const Graph& g, const TwoSpinSpec& spec, bool flipped,
                                   const Parallel& par) {
    spec.validate();
    const int n = g.num_vertices();
    if (n > static_cast<int>(kMaxConfigBits))
        throw TooLarge("two-spin enumeration capped at 2^20 configurations");
    const std::uint32_t configs = 1u << n;
    const auto& edges = g.edges();

    // per-block histograms over H in 0..n, merged in block order
    const std::uint32_t block = 1u << 12;
    const std::uint32_t nblocks = (configs + block - 1) / block;
    std::vector<std::vector<LogSumAcc>> hist(nblocks, std::vector<LogSumAcc>(n + 1));

    par.run(nblocks, [&](std::size_t bi) {
        auto& h = hist[bi];
        const std::uint32_t lo = static_cast<std::uint32_t>(bi) * block;
        const std::uint32_t hi = std::min(configs, lo + block);
        for (std::uint32_t sigma = lo; sigma < hi; ++sigma) {
            int n_plus = __builtin_popcount(sigma);
            int m_plus = 0, m_minus = 0;
            for (const auto& [u, v] : edges) {
                bool pu = (sigma >> u) & 1u, pv = (sigma >> v) & 1u;
                if (pu && pv) ++m_plus;
                if (!pu && !pv) ++m_minus;
            }
            double log_f = pow_log(spec.gamma1, m_plus) + pow_log(spec.gamma2, m_minus);
            if (log_f == kNegInf) continue;  // zero-weight configuration
            int x = flipped ? n - n_plus : n_plus;
            h[x].add(log_f);
        }
    });

    std::vector<SupportPoint> pts;
    for (int x = 0; x <= n; ++x) {
        LogSumAcc acc;
        for (std::uint32_t bi = 0; bi < nblocks; ++bi) acc.merge(hist[bi][x]);
        double logc = acc.value();
        if (logc != kNegInf) pts.push_back({static_cast<double>(x), logc});
    }
    return GrossGibbsModel::from_points(std::move(pts));
}

Bounds two_spin_bounds(const Graph& g, const TwoSpinSpec& spec, double lambda_hat,
                       AnnealInterval interval) {
    spec.validate();
    if (!(lambda_hat > 0.0) || !std::isfinite(lambda_hat))
        throw InvalidParameter("lambda_hat must be positive and finite");
    const double n = g.num_vertices();
    const double m = g.num_edges();
    Bounds b;
    b.beta_min = Beta::ninf();
    b.h = n;
    if (interval == AnnealInterval::first) {
        b.beta_max = Beta(std::log(lambda_hat));
        b.q = n * std::log1p(lambda_hat);
    } else {
        if (!(spec.gamma1 > 0.0))
            throw InvalidParameter("second-interval annealing requires gamma1 > 0");
        b.beta_max = Beta(std::log(1.0 / lambda_hat));
        b.q = m * std::log(spec.gamma2 / spec.gamma1) + n * std::log1p(1.0 / lambda_hat);
    }
    return b;
}

TreeRecursion tree_recursion(const TwoSpinSpec& spec, int d, double x) {
    if (d < 1) throw InvalidParameter("tree recursion needs d >= 1");
    if (!(x >= 0.0)) throw InvalidParameter("tree recursion needs x >= 0");
    double ratio = (spec.gamma1 * x + 1.0) / (x + spec.gamma2);
    TreeRecursion t;
    t.value = spec.lambda * std::pow(ratio, d);
    t.derivative =
        d * t.value * (spec.gamma1 * spec.gamma2 - 1.0) / ((spec.gamma1 * x + 1.0) * (x + spec.gamma2));
    return t;
}

double tree_fixed_point(const TwoSpinSpec& spec, int d) {
    spec.validate();
    if (!spec.antiferro()) throw NotAntiferro("tree fixed point requires gamma1 gamma2 < 1");
    // T_d is strictly decreasing, so T_d(x) - x has a single sign change.
    double lo = 0.0;
    double hi = std::max(1.0, spec.lambda);
    while (tree_recursion(spec, d, hi).value > hi) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (tree_recursion(spec, d, mid).value > mid)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

bool uniqueness_check(const TwoSpinSpec& spec, int max_degree, double delta) {
    spec.validate();
    if (!spec.antiferro()) throw NotAntiferro("uniqueness check requires gamma1 gamma2 < 1");
    if (max_degree < 2) throw InvalidParameter("uniqueness check needs max degree >= 2");
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("gap must lie in (0, 1)");
    for (int d = 1; d < max_degree; ++d) {
        double x_hat = tree_fixed_point(spec, d);
        if (std::abs(tree_recursion(spec, d, x_hat).derivative) > 1.0 - delta) return false;
    }
    return true;
}

UniquenessThreshold lambda_c(double gamma1, double gamma2, int max_degree) {
    TwoSpinSpec probe{gamma1, gamma2, 1.0};
    probe.validate();
    if (!(gamma1 * gamma2 < 1.0)) throw NotAntiferro("threshold defined for gamma1 gamma2 < 1");
    if (max_degree < 2) throw InvalidParameter("threshold needs max degree >= 2");

    UniquenessThreshold res;
    if (gamma1 == 0.0) {
        // lambda_c = min over 1 < d < Delta of gamma2^{d+1} d^d / (d-1)^{d+1};
        // d = 1 is unconditionally unique, so Delta = 2 has no finite threshold.
        if (max_degree == 2) {
            res.unique_for_all_lambda = true;
            return res;
        }
        double best = std::numeric_limits<double>::infinity();
        double at_dmax = 0.0;
        for (int d = 2; d < max_degree; ++d) {
            double v = std::pow(gamma2, d + 1) * std::pow(d, d) / std::pow(d - 1.0, d + 1);
            best = std::min(best, v);
            if (d == max_degree - 1) at_dmax = v;
        }
        res.lambda_c = best;
        res.lambda_c_regular = at_dmax;
        return res;
    }

    // gamma1 > 0: instability of the fixed point is possible only for
    // d >= (1 + s)/(1 - s), s = sqrt(gamma1 gamma2). If no d < Delta reaches
    // that bar the system is unique for every lambda.
    const double s = std::sqrt(gamma1 * gamma2);
    const double d_bar = (1.0 + s) / (1.0 - s);
    if (d_bar > max_degree - 1) {
        res.unique_for_all_lambda = true;
        return res;
    }
    auto window = [&](int d) {
        // positive roots of gamma1 x^2 + (gamma1 gamma2 + 1 - d(1 - gamma1 gamma2)) x + gamma2 = 0
        double bcoef = gamma1 * gamma2 + 1.0 - d * (1.0 - gamma1 * gamma2);
        double disc = bcoef * bcoef - 4.0 * gamma1 * gamma2;
        disc = std::max(disc, 0.0);
        double x1 = (-bcoef - std::sqrt(disc)) / (2.0 * gamma1);
        double x2 = (-bcoef + std::sqrt(disc)) / (2.0 * gamma1);
        auto lam = [&](double x) { return x * std::pow((x + gamma2) / (gamma1 * x + 1.0), d); };
        return std::pair<double, double>(lam(x1), lam(x2));
    };
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    int d_first = static_cast<int>(std::ceil(d_bar));
    for (int d = d_first; d < max_degree; ++d) {
        auto [l1, l2] = window(d);
        lo = std::min(lo, l1);
        hi = std::max(hi, l2);
    }
    auto [r1, r2] = window(max_degree - 1);
    res.lambda_c = lo;
    res.lambda_c_upper = hi;
    res.lambda_c_regular = r1;
    res.lambda_c_upper_regular = r2;
    return res;
}

}  // namespace anneal
