#include "anneal/glauber.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "anneal/errors.hpp"

namespace anneal {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// p = a/(a+b) from log odds la - lb, tolerating +-inf
double prob_from_log_odds(double la, double lb) {
    if (la == kNegInf) return 0.0;
    if (lb == kNegInf) return 1.0;
    return 1.0 / (1.0 + std::exp(lb - la));
}

}  // namespace

TwoSpinChain::TwoSpinChain(const Graph& g, double gamma1, double gamma2, double lambda_act,
                           bool start_all_plus)
    : g_(g),
      log_gamma1_(gamma1 == 0.0 ? kNegInf : std::log(gamma1)),
      log_gamma2_(gamma2 == 0.0 ? kNegInf : std::log(gamma2)),
      log_lambda_(lambda_act == 0.0 ? kNegInf : std::log(lambda_act)),
      table_stride_(g.max_degree() + 1),
      spins_(g.num_vertices(), start_all_plus ? std::int8_t{1} : std::int8_t{-1}),
      num_plus_(start_all_plus ? g.num_vertices() : 0) {
    // odds lambda gamma1^{k+} : gamma2^{k-}, with 0^0 = 1; only
    // (max_degree + 1)^2 combinations exist, so tabulate them once
    prob_table_.resize(table_stride_ * table_stride_);
    for (int kp = 0; kp < table_stride_; ++kp) {
        for (int km = 0; km < table_stride_; ++km) {
            double la = log_lambda_ + (kp == 0 ? 0.0 : kp * log_gamma1_);
            double lb = km == 0 ? 0.0 : km * log_gamma2_;
            prob_table_[kp * table_stride_ + km] = prob_from_log_odds(la, lb);
        }
    }
}

double TwoSpinChain::conditional_plus_prob(int v) const {
    int k_plus = 0, deg = 0;
    for (int u : g_.neighbors(v)) {
        ++deg;
        if (spins_[u] > 0) ++k_plus;
    }
    return prob_table_[k_plus * table_stride_ + (deg - k_plus)];
}

void TwoSpinChain::step(Rng& rng) {
    int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(g_.num_vertices())));
    bool plus = rng.uniform01() < conditional_plus_prob(v);
    if (plus && spins_[v] < 0) ++num_plus_;
    if (!plus && spins_[v] > 0) --num_plus_;
    spins_[v] = plus ? 1 : -1;
}

void TwoSpinChain::run(std::int64_t steps, Rng& rng) {
    for (std::int64_t i = 0; i < steps; ++i) step(rng);
}

void TwoSpinChain::reset(bool all_plus) {
    std::fill(spins_.begin(), spins_.end(), all_plus ? std::int8_t{1} : std::int8_t{-1});
    num_plus_ = all_plus ? g_.num_vertices() : 0;
}

void TwoSpinChain::set_state(const std::vector<std::int8_t>& spins) {
    if (static_cast<int>(spins.size()) != g_.num_vertices())
        throw InvalidParameter("spin state size mismatch");
    spins_ = spins;
    num_plus_ = 0;
    for (auto s : spins_)
        if (s > 0) ++num_plus_;
}

MatchingChain::MatchingChain(const Graph& g, double lambda_act)
    : g_(g),
      lambda_(lambda_act),
      in_matching_(g.num_edges(), 0),
      cover_(g.num_vertices(), 0),
      size_(0) {}

double MatchingChain::conditional_in_prob(int e) const {
    auto [u, v] = g_.edges()[e];
    int cu = cover_[u] - (in_matching_[e] ? 1 : 0);
    int cv = cover_[v] - (in_matching_[e] ? 1 : 0);
    if (cu > 0 || cv > 0) return 0.0;  // blocked by another matched edge
    return lambda_ / (1.0 + lambda_);
}

void MatchingChain::step(Rng& rng) {
    int e = static_cast<int>(rng.below(static_cast<std::uint64_t>(g_.num_edges())));
    bool want_in = rng.uniform01() < conditional_in_prob(e);
    if (want_in == static_cast<bool>(in_matching_[e])) return;
    auto [u, v] = g_.edges()[e];
    int d = want_in ? 1 : -1;
    cover_[u] += d;
    cover_[v] += d;
    size_ += d;
    in_matching_[e] = want_in ? 1 : 0;
}

void MatchingChain::run(std::int64_t steps, Rng& rng) {
    for (std::int64_t i = 0; i < steps; ++i) step(rng);
}

void MatchingChain::reset() {
    std::fill(in_matching_.begin(), in_matching_.end(), 0);
    std::fill(cover_.begin(), cover_.end(), 0);
    size_ = 0;
}

void MatchingChain::set_state(const std::vector<std::uint8_t>& in_matching) {
    if (static_cast<int>(in_matching.size()) != g_.num_edges())
        throw InvalidParameter("matching state size mismatch");
    in_matching_ = in_matching;
    std::fill(cover_.begin(), cover_.end(), 0);
    size_ = 0;
    for (int e = 0; e < g_.num_edges(); ++e) {
        if (!in_matching_[e]) continue;
        auto [u, v] = g_.edges()[e];
        ++cover_[u];
        ++cover_[v];
        ++size_;
        if (cover_[u] > 1 || cover_[v] > 1) throw InvalidParameter("state is not a matching");
    }
}

std::vector<std::int8_t> glauber_two_spin(const Graph& g, const TwoSpinSpec& spec, Beta beta,
                                          std::int64_t steps, Rng& rng) {
    spec.validate();
    if (steps < 0) throw InvalidParameter("step count must be nonnegative");
    double activity = beta.is_ninf() ? 0.0 : std::exp(beta.value());
    TwoSpinChain chain(g, spec.gamma1, spec.gamma2, activity);
    chain.run(steps, rng);
    return chain.spins();
}

std::vector<std::uint8_t> glauber_matchings(const Graph& g, double lambda, std::int64_t steps,
                                            Rng& rng) {
    if (steps < 0) throw InvalidParameter("step count must be nonnegative");
    MatchingChain chain(g, lambda);
    chain.run(steps, rng);
    return chain.in_matching();
}

std::int64_t default_glauber_steps(int sites) {
    double s = std::max(2, sites);
    return static_cast<std::int64_t>(std::ceil(10.0 * s * std::log(s)));
}

namespace {

class TwoSpinGlauberOracle final : public GibbsOracle {
  public:
    TwoSpinGlauberOracle(const Graph& g, TwoSpinSpec spec, bool flipped, std::int64_t steps,
                         std::uint64_t seed)
        : g_(g), spec_(spec), flipped_(flipped), steps_(steps), seed_(seed) {}

    std::vector<double> draw(Beta beta, std::size_t count, std::uint64_t stream) override {
        record_draws(count);
        std::vector<double> out(count, 0.0);
        if (beta.is_ninf()) return out;  // ground configuration, H = 0
        // first interval: activity e^beta, H = n+; flipped: e^-beta, H = n - n+
        double activity = std::exp(flipped_ ? -beta.value() : beta.value());
        Rng rng(stream_seed(seed_, stream, beta));
        TwoSpinChain chain(g_, spec_.gamma1, spec_.gamma2, activity, /*start_all_plus=*/flipped_);
        for (std::size_t j = 0; j < count; ++j) {
            chain.reset(flipped_);  // fresh chain per draw: independence
            chain.run(steps_, rng);
            out[j] = flipped_ ? g_.num_vertices() - chain.num_plus() : chain.num_plus();
        }
        return out;
    }

  private:
    const Graph& g_;
    TwoSpinSpec spec_;
    bool flipped_;
    std::int64_t steps_;
    std::uint64_t seed_;
};

class MatchingGlauberOracle final : public GibbsOracle {
  public:
    MatchingGlauberOracle(const Graph& g, std::int64_t steps, std::uint64_t seed)
        : g_(g), steps_(steps), seed_(seed) {}

    std::vector<double> draw(Beta beta, std::size_t count, std::uint64_t stream) override {
        record_draws(count);
        std::vector<double> out(count, 0.0);
        if (beta.is_ninf()) return out;  // empty matching
        double activity = std::exp(beta.value());
        Rng rng(stream_seed(seed_, stream, beta));
        MatchingChain chain(g_, activity);
        for (std::size_t j = 0; j < count; ++j) {
            chain.reset();  // fresh chain per draw: independence
            chain.run(steps_, rng);
            out[j] = chain.matching_size();
        }
        return out;
    }

  private:
    const Graph& g_;
    std::int64_t steps_;
    std::uint64_t seed_;
};

}  // namespace

std::unique_ptr<GibbsOracle> oracle_from_glauber_two_spin(const Graph& g, const TwoSpinSpec& spec,
                                                          bool flipped, std::int64_t steps_per_sample,
                                                          std::uint64_t seed) {
    spec.validate();
    if (steps_per_sample < 0) throw InvalidParameter("steps_per_sample must be nonnegative");
    if (flipped && spec.gamma1 == 0.0)
        throw InvalidParameter("flipped annealing requires gamma1 > 0");
    return std::make_unique<TwoSpinGlauberOracle>(g, spec, flipped, steps_per_sample, seed);
}

std::unique_ptr<GibbsOracle> oracle_from_glauber_matchings(const Graph& g,
                                                           std::int64_t steps_per_sample,
                                                           std::uint64_t seed) {
    if (steps_per_sample < 0) throw InvalidParameter("steps_per_sample must be nonnegative");
    return std::make_unique<MatchingGlauberOracle>(g, steps_per_sample, seed);
}

}  // namespace anneal
