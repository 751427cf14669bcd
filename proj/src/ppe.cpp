#include "anneal/ppe.hpp"

#include <cmath>
#include <limits>

#include "anneal/errors.hpp"

namespace anneal {

namespace {

constexpr std::int64_t kChunk = 1 << 16;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// First and second moments of exp(a_j) in one shared log frame: one exp per
// term, the square serving the empirical relative variance.
struct SideAcc {
    double max = kNegInf;
    double s1 = 0.0;  // sum of exp(a - max)
    double s2 = 0.0;  // sum of exp(2(a - max))
    std::int64_t n = 0;

    void add(double a) {
        ++n;
        if (a == kNegInf) return;
        if (a <= max) {
            double t = std::exp(a - max);
            s1 += t;
            s2 += t * t;
            return;
        }
        if (max == kNegInf) {
            max = a;
            s1 = 1.0;
            s2 = 1.0;
            return;
        }
        double r = std::exp(max - a);
        s1 = s1 * r + 1.0;
        s2 = s2 * r * r + 1.0;
        max = a;
    }

    void merge(const SideAcc& o) {
        n += o.n;
        if (o.max == kNegInf) return;
        if (max == kNegInf) {
            max = o.max;
            s1 = o.s1;
            s2 = o.s2;
            return;
        }
        if (o.max <= max) {
            double r = std::exp(o.max - max);
            s1 += o.s1 * r;
            s2 += o.s2 * r * r;
        } else {
            double r = std::exp(max - o.max);
            s1 = s1 * r + o.s1;
            s2 = s2 * r * r + o.s2;
            max = o.max;
        }
    }

    double log_sum() const { return max == kNegInf ? kNegInf : max + std::log(s1); }
    double log_sum_sq() const { return max == kNegInf ? kNegInf : 2.0 * max + std::log(s2); }
};

}  // namespace

std::int64_t required_k(double kappa_cap, double eps) {
    if (!(kappa_cap > 0.0) || !std::isfinite(kappa_cap))
        throw InvalidParameter("kappa_cap must be positive and finite");
    if (!(eps > 0.0 && eps < 0.5)) throw InvalidParameter("eps must lie in (0, 1/2)");
    double k = std::ceil(100.0 * std::expm1(kappa_cap) / (eps * eps));
    if (k >= 9.0e18) return std::numeric_limits<std::int64_t>::max();
    return static_cast<std::int64_t>(k);
}

PpeResult ppe_estimate(GibbsOracle& oracle, const Schedule& schedule, std::int64_t k,
                       const Parallel& par, std::uint64_t stream_base) {
    if (k < 1) throw InvalidParameter("PPE requires k >= 1");
    auto betas = schedule.betas();
    const std::size_t t = betas.size() - 1;  // segments
    const std::int64_t chunks = (k + kChunk - 1) / kChunk;

    // One task per (segment, side, chunk); each task owns its accumulator
    // slot, so the reduction order below is fixed regardless of scheduling.
    std::vector<SideAcc> acc(t * 2 * static_cast<std::size_t>(chunks));
    par.run(acc.size(), [&](std::size_t task) {
        const std::size_t seg = task / (2 * chunks);
        const std::size_t side = (task / chunks) % 2;  // 0 = U, 1 = V
        const std::int64_t chunk = static_cast<std::int64_t>(task % chunks);
        const std::int64_t begin = chunk * kChunk;
        const std::int64_t cnt = std::min<std::int64_t>(kChunk, k - begin);

        const double halfgap = 0.5 * beta_gap(betas[seg], betas[seg + 1]);
        const double coeff = side == 0 ? halfgap : -halfgap;
        const Beta at = side == 0 ? betas[seg] : betas[seg + 1];
        const std::uint64_t stream =
            stream_base + ((static_cast<std::uint64_t>(seg) * 2 + side) << 24) +
            static_cast<std::uint64_t>(chunk);

        auto draws = oracle.draw(at, static_cast<std::size_t>(cnt), stream);
        SideAcc& a = acc[task];
        for (double x : draws) a.add(ext_mul(coeff, x));
    });

    PpeResult res;
    res.segments.reserve(t);
    const double log_k = std::log(static_cast<double>(k));
    double log_u_total = 0.0, log_v_total = 0.0;
    for (std::size_t seg = 0; seg < t; ++seg) {
        PpeSegmentStats st;
        st.index = static_cast<int>(seg);
        st.k = k;
        for (int side = 0; side < 2; ++side) {
            SideAcc merged;
            for (std::int64_t c = 0; c < chunks; ++c)
                merged.merge(acc[(seg * 2 + side) * chunks + c]);
            double log_mean = merged.log_sum() - log_k;
            if (log_mean == kNegInf) {
                if (side == 0)
                    throw AllMassLost("segment " + std::to_string(seg) +
                                      ": every U term vanished");
                throw AllMassLost("segment " + std::to_string(seg) +
                                  ": no zero draw against a -inf segment (k too small)");
            }
            double log_m2 = merged.log_sum_sq() - log_k;
            double relvar = std::expm1(log_m2 - 2.0 * log_mean);
            if (side == 0) {
                st.log_u = log_mean;
                st.relvar_u = relvar;
                log_u_total += log_mean;
            } else {
                st.log_v = log_mean;
                st.relvar_v = relvar;
                log_v_total += log_mean;
            }
        }
        res.segments.push_back(st);
    }
    res.log_q_hat = log_u_total - log_v_total;
    return res;
}

}  // namespace anneal
