#pragma once

#include <string>

#include "anneal/graph.hpp"
#include "anneal/ising.hpp"
#include "anneal/two_spin.hpp"

namespace anneal {

// Flat key=value model description. Common: model=two_spin|matchings|ising|
// random_cluster. Two-spin: gamma1, gamma2, lambda, flipped. Matchings:
// lambda. Ising: slack, gamma, lambda, per-index gamma[i], lambda[i].
// Random cluster: p, lambda, per-index p[i], lambda[i].
struct ModelSpec {
    enum class Kind { two_spin, matchings, ising, random_cluster };
    Kind kind = Kind::two_spin;

    TwoSpinSpec two_spin;
    bool flipped = false;
    double matching_lambda = 1.0;

    double ising_slack = 0.1;
    double default_edge_gamma = 2.0;
    double default_vertex_lambda = 0.5;
    double default_edge_p = 0.5;
    std::vector<std::pair<int, double>> edge_overrides;    // gamma[i] / p[i]
    std::vector<std::pair<int, double>> vertex_overrides;  // lambda[i]

    IsingSpec to_ising(const Graph& g) const;
    RandomClusterSpec to_random_cluster(const Graph& g) const;
};

ModelSpec parse_model_spec(const std::string& path);
ModelSpec parse_model_spec_text(const std::string& text);

}  // namespace anneal
