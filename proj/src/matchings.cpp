#include "anneal/matchings.hpp"

#include <cmath>

#include "anneal/errors.hpp"

namespace anneal {

namespace {

// include/exclude recursion over edges; counts[s] = #matchings of size s
void count_matchings(const Graph& g, std::size_t e, std::uint32_t covered, int size,
                     std::vector<double>& counts) {
    if (e == g.edges().size()) {
        counts[size] += 1.0;
        return;
    }
    count_matchings(g, e + 1, covered, size, counts);
    auto [u, v] = g.edges()[e];
    if (!((covered >> u) & 1u) && !((covered >> v) & 1u))
        count_matchings(g, e + 1, covered | (1u << u) | (1u << v), size + 1, counts);
}

}  // namespace

GrossGibbsModel enumerate_matchings(const Graph& g) {
    if (g.num_edges() > 24) throw TooLarge("matching enumeration capped at 24 edges");
    if (g.num_vertices() > 32) throw TooLarge("matching enumeration capped at 32 vertices");
    std::vector<double> counts(g.num_edges() + 1, 0.0);
    count_matchings(g, 0, 0u, 0, counts);
    std::vector<SupportPoint> pts;
    for (std::size_t s = 0; s < counts.size(); ++s)
        if (counts[s] > 0.0) pts.push_back({static_cast<double>(s), std::log(counts[s])});
    return GrossGibbsModel::from_points(std::move(pts));
}

Bounds matching_bounds(const Graph& g, double lambda_hat) {
    if (!(lambda_hat > 0.0) || !std::isfinite(lambda_hat))
        throw InvalidParameter("lambda_hat must be positive and finite");
    Bounds b;
    b.beta_min = Beta::ninf();
    b.beta_max = Beta(std::log(lambda_hat));
    b.q = g.num_edges() * std::log1p(lambda_hat);
    b.h = g.num_edges();
    return b;
}

}  // namespace anneal
