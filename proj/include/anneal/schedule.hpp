#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "anneal/beta.hpp"

namespace anneal {

// Cooling schedule: strictly increasing beta values from beta_min (possibly
// -inf) to beta_max, length >= 2.
class Schedule {
  public:
    // Sorts, deduplicates (tolerance 1e-12 relative on finite values) and
    // validates. The input must contain both endpoints.
    static Schedule from_betas(std::vector<Beta> betas);

    std::size_t length() const { return betas_.size(); }
    std::span<const Beta> betas() const { return betas_; }
    Beta front() const { return betas_.front(); }
    Beta back() const { return betas_.back(); }
    Beta operator[](std::size_t i) const { return betas_[i]; }

    // Text format: one beta per line; "-inf" token allowed on the first line.
    static Schedule load(const std::string& path);
    void save(const std::string& path) const;

  private:
    std::vector<Beta> betas_;
};

struct ScheduleDiagnostics {
    std::int64_t length = 0;
    double maxwidth = 0.0;   // requires an exact model
    double curvature = 0.0;  // requires an exact model
    std::int64_t samples_used = 0;
    std::int64_t rounds = 0;
};

}  // namespace anneal
