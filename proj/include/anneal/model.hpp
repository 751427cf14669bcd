#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "anneal/beta.hpp"
#include "anneal/rng.hpp"

namespace anneal {

class Schedule;

struct SupportPoint {
    double x;           // Hamiltonian value, in {0} u [1, inf)
    double log_weight;  // ln c_x, finite; weights meaningful up to a common shift
};

// Upper bounds handed to the schedule generators: q >= ln Q and
// h >= E_{mu_{beta_max}}[H], with the paper-level minimums q, h >= 2.
struct Bounds {
    double q = 0.0;
    double h = 0.0;
    Beta beta_min;
    Beta beta_max;

    // Rejects ill-ordered or non-finite parameters. `paper_minimums` adds the
    // q, h >= 2 requirement the estimators rely on; the schedule generators
    // themselves only need positivity.
    void validate(bool paper_minimums = true) const;

    // Same bounds with q, h raised to the paper minimum of 2 (raising an
    // upper bound keeps it valid).
    Bounds with_paper_minimums() const;
};

struct Width {
    double minus = 0.0;  // z(B^-(x), x)
    double plus = 0.0;   // z(x, B^+(x))
    double total() const { return minus + plus; }
};

// Distribution over Hamiltonian values x with weights c_x e^{beta x}: the
// image of a Gibbs distribution under its Hamiltonian. Everything is exact
// and in log space; this is the ground-truth object the estimators are
// verified against.
class GrossGibbsModel {
  public:
    // Sorts, merges x values closer than 1e-12, validates the support range.
    static GrossGibbsModel from_points(std::vector<SupportPoint> pts);

    // Text format: one "x log_c" pair per line, '#' comments.
    static GrossGibbsModel load(const std::string& path);
    static GrossGibbsModel parse(const std::string& text);

    std::span<const SupportPoint> support() const { return support_; }
    bool has_zero_mass() const { return support_.front().x == 0.0; }

    // z(beta) = ln Z(beta); z(-inf) = ln c_0.
    double log_partition(Beta beta) const;
    double z_gap(Beta a, Beta b) const { return log_partition(b) - log_partition(a); }

    // z'(beta) = E[X] and z''(beta) = Var[X] under mu_beta.
    double mean_hamiltonian(Beta beta) const;
    double var_hamiltonian(Beta beta) const;

    // kappa(b1, b2) = z(b1) - 2 z(mid) + z(b2), mid of (-inf, b) being -inf.
    double curvature_pair(Beta b1, Beta b2) const;
    // Sum of curvature_pair over consecutive schedule segments.
    double curvature(const Schedule& schedule) const;

    double maxwidth(const Schedule& schedule) const;

    // Widths of the schedule interval containing x (half-open convention
    // x in [beta_v, beta_{v+1})); x must lie strictly inside the range.
    Width width(const Schedule& schedule, Beta x) const;

    // Normalized probabilities of the support points under mu_beta.
    std::vector<double> probabilities(Beta beta) const;

    // One exact inverse-CDF draw from mu_beta; -inf returns 0.
    double sample(Beta beta, Rng& rng) const;

  private:
    std::vector<SupportPoint> support_;  // sorted by x, distinct
};

// Streaming log-sum-exp accumulator with a deterministic merge, so chunked
// parallel reductions combine in a fixed order.
class LogSumAcc {
  public:
    void add(double a);
    void merge(const LogSumAcc& other);
    double value() const;  // -inf when empty
    std::int64_t count() const { return n_; }

  private:
    double max_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;  // sum of exp(a - max_), excluding -inf terms
    std::int64_t n_ = 0;
};

}  // namespace anneal
