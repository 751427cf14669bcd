#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "anneal/beta.hpp"
#include "anneal/model.hpp"

namespace anneal {

// Black-box sampling access to a gross Gibbs distribution. draw() returns
// `count` i.i.d. Hamiltonian values from mu_beta and is a deterministic
// function of (oracle seed, beta, count, stream): replaying a call gives the
// same values, and distinct streams are independent. Draws on distinct
// streams may run concurrently; the draw counter is the only shared state.
class GibbsOracle {
  public:
    virtual ~GibbsOracle() = default;

    virtual std::vector<double> draw(Beta beta, std::size_t count, std::uint64_t stream) = 0;

    std::uint64_t total_draws() const { return draws_.load(std::memory_order_relaxed); }

  protected:
    void record_draws(std::size_t n) { draws_.fetch_add(n, std::memory_order_relaxed); }

  private:
    std::atomic<std::uint64_t> draws_{0};
};

// Oracle backed by exact inverse-CDF sampling from a GrossGibbsModel.
class ExactOracle final : public GibbsOracle {
  public:
    ExactOracle(GrossGibbsModel model, std::uint64_t seed)
        : model_(std::move(model)), seed_(seed) {}

    std::vector<double> draw(Beta beta, std::size_t count, std::uint64_t stream) override;

    const GrossGibbsModel& model() const { return model_; }
    std::uint64_t seed() const { return seed_; }

  private:
    GrossGibbsModel model_;
    std::uint64_t seed_;
};

}  // namespace anneal
