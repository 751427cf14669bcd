#pragma once

#include "anneal/graph.hpp"
#include "anneal/model.hpp"

namespace anneal {

// Monomer-dimer model: matchings weighted lambda^{|M|}, H = |M|. The
// histogram c_x = #{matchings of size x} is activity-free; lambda enters
// through beta = ln lambda. Brute force for m <= 24 edges.
GrossGibbsModel enumerate_matchings(const Graph& g);

// Annealing bounds for edge activity lambda_hat: the 2-spin first-interval
// bounds on the line graph, i.e. q = m ln(1 + lambda_hat), h = m.
Bounds matching_bounds(const Graph& g, double lambda_hat);

}  // namespace anneal
