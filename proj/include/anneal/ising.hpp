#pragma once

#include <vector>

#include "anneal/graph.hpp"
#include "anneal/model.hpp"

namespace anneal {

// Ferromagnetic Ising model with external fields: weight
// (prod_{v:+1} lambda_v)(prod_{e same-spin} gamma_e), edge activities
// gamma_e >= 1 + slack, vertex activities lambda_v <= 1 - slack.
struct IsingSpec {
    std::vector<double> edge_gamma;
    std::vector<double> vertex_lambda;
    double slack = 0.0;

    void validate(const Graph& g) const;
    // eta = -1/ln(1 - slack): rescales H = eta sum_{v:+1} ln(1/lambda_v)
    // into {0} u [1, inf).
    double eta() const;
};

struct IsingModel {
    GrossGibbsModel model;
    Bounds bounds;  // beta in (-inf, -1/eta], q = n, h = n eta / e
};

// Exact gross histogram of the rescaled Hamiltonian. Configurations with a
// +1 spin on a lambda_v = 0 vertex carry zero weight (H = +inf) and are
// dropped. Brute force over 2^n <= 2^20.
IsingModel enumerate_ising(const Graph& g, const IsingSpec& spec);

// Random cluster model: edge subsets S weighted
// prod_S p_e prod_{~S} (1-p_e) prod_{components C} (1 + prod_{v in C} lambda_v).
struct RandomClusterSpec {
    std::vector<double> edge_p;        // in (0, 1)
    std::vector<double> vertex_lambda; // in [0, 1)

    void validate(const Graph& g) const;
    static RandomClusterSpec from_ising(const IsingSpec& ising);  // p_e = 1 - 1/gamma_e
};

// Exact ln Z^RC by enumeration of all 2^m edge subsets (m <= 24).
double enumerate_rc(const Graph& g, const RandomClusterSpec& spec);

// |Z^Ising / (Z^RC prod gamma_e) - 1| under p_e = 1 - 1/gamma_e.
double ising_rc_identity_check(const Graph& g, const IsingSpec& spec);

// max_v (Pr[sigma_v = +1] - lambda_v) with exact marginals; the Ising
// marginal bound says this is <= 0.
double ising_marginal_bound_check(const Graph& g, const IsingSpec& spec);

// Exact ln Z^Ising by direct configuration sum (no histogram); test oracle
// surface for the identity check.
double ising_log_partition_direct(const Graph& g, const IsingSpec& spec);

}  // namespace anneal
