#include "anneal/oracle.hpp"

namespace anneal {

std::vector<double> ExactOracle::draw(Beta beta, std::size_t count, std::uint64_t stream) {
    record_draws(count);
    std::vector<double> out(count, 0.0);
    if (beta.is_ninf()) {
        if (!model_.has_zero_mass()) throw DegenerateModel("Z(-inf) = 0: no support at x = 0");
        return out;  // mu_{-inf} is identically zero
    }
    Rng rng(stream_seed(seed_, stream, beta));
    auto probs = model_.probabilities(beta);
    auto support = model_.support();
    for (std::size_t j = 0; j < count; ++j) {
        double u = rng.uniform01();
        double acc = 0.0;
        double x = support.back().x;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            acc += probs[i];
            if (u < acc) {
                x = support[i].x;
                break;
            }
        }
        out[j] = x;
    }
    return out;
}

}  // namespace anneal
