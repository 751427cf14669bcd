#pragma once

#include <optional>

#include "anneal/graph.hpp"
#include "anneal/model.hpp"
#include "anneal/parallel.hpp"

namespace anneal {

// Two-spin system: weight lambda^{n+} gamma1^{m+} gamma2^{m-} over +-1
// vertex labelings. Hardcore is (0, 1, lambda); Ising is (g, g, lambda).
struct TwoSpinSpec {
    double gamma1 = 0.0;
    double gamma2 = 1.0;
    double lambda = 1.0;

    void validate() const;  // 0 <= gamma1 <= gamma2, gamma2 > 0, lambda > 0
    bool antiferro() const { return gamma1 * gamma2 < 1.0; }
};

// Exact histogram of the Hamiltonian H = n+ (or n - n+ when flipped, the
// reformulation annealing down from lambda = inf) with weights
// c_x = sum_{H=x} gamma1^{m+} gamma2^{m-}. Brute force over 2^n <= 2^20.
GrossGibbsModel enumerate_two_spin(const Graph& g, const TwoSpinSpec& spec, bool flipped = false,
                                   const Parallel& par = Parallel::sequential());

enum class AnnealInterval { first, second };

// Annealing bounds for target activity lambda_hat. First interval: beta in
// (-inf, ln lambda_hat], q = n ln(1 + lambda_hat), h = n. Second interval
// (needs gamma1 > 0): beta in (-inf, ln(1/lambda_hat)],
// q = m ln(gamma2/gamma1) + n ln(1 + 1/lambda_hat), h = n.
Bounds two_spin_bounds(const Graph& g, const TwoSpinSpec& spec, double lambda_hat,
                       AnnealInterval interval = AnnealInterval::first);

// Tree recursion T_d(x) = lambda ((gamma1 x + 1)/(x + gamma2))^d and its
// derivative at x.
struct TreeRecursion {
    double value = 0.0;
    double derivative = 0.0;
};
TreeRecursion tree_recursion(const TwoSpinSpec& spec, int d, double x);

// Unique positive fixed point of T_d, by bisection (T_d is strictly
// decreasing in the anti-ferromagnetic regime). Tolerance 1e-12.
double tree_fixed_point(const TwoSpinSpec& spec, int d);

// Up-to-Delta uniqueness with gap delta: |T_d'(x_d)| <= 1 - delta at the
// fixed point for every 1 <= d < Delta. Requires gamma1 gamma2 < 1.
bool uniqueness_check(const TwoSpinSpec& spec, int max_degree, double delta);

// Uniqueness-threshold description for anti-ferromagnetic parameters.
// `lambda_c`/`lambda_c_upper` minimize/maximize the per-d windows over all
// 1 <= d < Delta (the general-graph characterization for gamma2 <= 1);
// `lambda_c_regular`/`lambda_c_upper_regular` evaluate d = Delta - 1 only
// (the Delta-regular characterization).
struct UniquenessThreshold {
    bool unique_for_all_lambda = false;
    std::optional<double> lambda_c;
    std::optional<double> lambda_c_upper;          // reentrant branch (gamma1 > 0)
    std::optional<double> lambda_c_regular;
    std::optional<double> lambda_c_upper_regular;
};
UniquenessThreshold lambda_c(double gamma1, double gamma2, int max_degree);

}  // namespace anneal
