#include "anneal/static_schedule.hpp"

#include <cmath>

#include "anneal/errors.hpp"

namespace anneal {

namespace {

constexpr std::int64_t kMaxPoints = 50'000'000;

void check_args(const Bounds& bounds, double theta) {
    if (!(theta > 0.0 && theta <= 1.0)) throw InvalidParameter("theta must lie in (0, 1]");
    bounds.validate(/*paper_minimums=*/false);
}

// s_i = min{h, q / (beta_max - beta_i)}; the i = 0 ratio is +inf, so s_0 = h.
double derivative_cap(const Bounds& b, double beta_i) {
    double gap = b.beta_max.value() - beta_i;
    if (gap <= 0.0) return b.h;
    return std::min(b.h, b.q / gap);
}

}  // namespace

Schedule static_schedule(const Bounds& bounds, double theta) {
    check_args(bounds, theta);
    std::vector<Beta> pts;
    pts.push_back(bounds.beta_max);
    double beta_i = bounds.beta_max.value();
    for (;;) {
        double s_i = derivative_cap(bounds, beta_i);
        double beta_next = beta_i - theta / s_i;
        if (s_i < theta / 2.0 || Beta(beta_next) < bounds.beta_min) break;
        pts.push_back(Beta(beta_next));
        beta_i = beta_next;
        if (static_cast<std::int64_t>(pts.size()) > kMaxPoints)
            throw IterationLimit("static schedule exceeded the point cap");
    }
    pts.push_back(bounds.beta_min);
    return Schedule::from_betas(std::move(pts));
}

Schedule static_schedule_closed_form(const Bounds& bounds, double theta) {
    check_args(bounds, theta);
    const double q = bounds.q, h = bounds.h;
    const double bmax = bounds.beta_max.value();
    // First phase: beta_i = beta_max - i theta/h while beta_i > beta_max - q/h,
    // i.e. i < q/theta. The phase boundary is t1 = ceil(q/theta); both phase
    // formulas agree there when q/theta is integral.
    const std::int64_t t1 = static_cast<std::int64_t>(std::ceil(q / theta));
    const double base_gap = static_cast<double>(t1) * theta / h;  // beta_max - beta_{t1}
    const double growth = 1.0 + theta / q;

    auto beta_at = [&](std::int64_t i) {
        if (i <= t1) return bmax - static_cast<double>(i) * theta / h;
        return bmax - base_gap * std::pow(growth, static_cast<double>(i - t1));
    };
    auto cap_at = [&](std::int64_t i) {
        if (i < t1) return h;
        double gap = bmax - beta_at(i);
        return gap <= 0.0 ? h : std::min(h, q / gap);
    };

    std::vector<Beta> pts;
    for (std::int64_t i = 0;; ++i) {
        double beta_i = beta_at(i);
        pts.push_back(Beta(beta_i));
        double s_i = cap_at(i);
        double beta_next = beta_i - theta / s_i;
        if (s_i < theta / 2.0 || Beta(beta_next) < bounds.beta_min) break;
        if (static_cast<std::int64_t>(pts.size()) > kMaxPoints)
            throw IterationLimit("static schedule exceeded the point cap");
    }
    pts.push_back(bounds.beta_min);
    return Schedule::from_betas(std::move(pts));
}

}  // namespace anneal
