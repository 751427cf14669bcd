#include "anneal/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "anneal/errors.hpp"
#include "anneal/schedule.hpp"

namespace anneal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double logaddexp(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

void LogSumAcc::add(double a) {
    ++n_;
    if (a == -kInf) return;
    if (a <= max_) {
        sum_ += std::exp(a - max_);
        return;
    }
    if (max_ == -kInf) {
        max_ = a;
        sum_ = 1.0;
        return;
    }
    sum_ = sum_ * std::exp(max_ - a) + 1.0;
    max_ = a;
}

void LogSumAcc::merge(const LogSumAcc& other) {
    n_ += other.n_;
    if (other.max_ == -kInf) return;
    if (max_ == -kInf) {
        max_ = other.max_;
        sum_ = other.sum_;
        return;
    }
    if (other.max_ <= max_) {
        sum_ += other.sum_ * std::exp(other.max_ - max_);
    } else {
        sum_ = sum_ * std::exp(max_ - other.max_) + other.sum_;
        max_ = other.max_;
    }
}

double LogSumAcc::value() const {
    if (max_ == -kInf) return -kInf;
    return max_ + std::log(sum_);
}

void Bounds::validate(bool paper_minimums) const {
    if (!std::isfinite(q) || !std::isfinite(h)) throw InvalidParameter("bounds q, h must be finite");
    if (q <= 0.0 || h <= 0.0) throw InvalidParameter("bounds q, h must be positive");
    if (paper_minimums && (q < 2.0 || h < 2.0))
        throw InvalidParameter("bounds require q >= 2 and h >= 2");
    if (!(beta_min < beta_max)) throw InvalidParameter("bounds require beta_min < beta_max");
    if (!beta_max.is_finite()) throw InvalidParameter("beta_max must be finite");
}

Bounds Bounds::with_paper_minimums() const {
    Bounds b = *this;
    b.q = std::max(2.0, b.q);
    b.h = std::max(2.0, b.h);
    return b;
}

GrossGibbsModel GrossGibbsModel::from_points(std::vector<SupportPoint> pts) {
    if (pts.empty()) throw InvalidParameter("model needs at least one support point");
    for (const auto& p : pts) {
        if (!std::isfinite(p.x)) throw InvalidParameter("Hamiltonian values must be finite");
        if (!std::isfinite(p.log_weight)) throw InvalidParameter("log-weights must be finite");
    }
    std::sort(pts.begin(), pts.end(),
              [](const SupportPoint& a, const SupportPoint& b) { return a.x < b.x; });

    // merge x values closer than 1e-12
    std::vector<SupportPoint> merged;
    merged.reserve(pts.size());
    for (const auto& p : pts) {
        if (!merged.empty() && p.x - merged.back().x <= 1e-12 * std::max(1.0, std::abs(p.x))) {
            merged.back().log_weight = logaddexp(merged.back().log_weight, p.log_weight);
        } else {
            merged.push_back(p);
        }
    }
    if (std::abs(merged.front().x) <= 1e-12) merged.front().x = 0.0;
    for (const auto& p : merged) {
        if (p.x < 0.0 || (p.x != 0.0 && p.x < 1.0 - 1e-9))
            throw InvalidParameter("Hamiltonian support must lie in {0} u [1, inf)");
    }
    GrossGibbsModel m;
    m.support_ = std::move(merged);
    return m;
}

GrossGibbsModel GrossGibbsModel::parse(const std::string& text) {
    std::vector<SupportPoint> pts;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double x, logc;
        if (!(ls >> x)) continue;  // blank line
        if (!(ls >> logc)) throw ParseError("model line " + std::to_string(lineno) + ": expected 'x log_c'");
        std::string extra;
        if (ls >> extra) throw ParseError("model line " + std::to_string(lineno) + ": trailing tokens");
        pts.push_back({x, logc});
    }
    return from_points(std::move(pts));
}

GrossGibbsModel GrossGibbsModel::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

double GrossGibbsModel::log_partition(Beta beta) const {
    if (beta.is_ninf()) {
        if (!has_zero_mass()) throw DegenerateModel("Z(-inf) = 0: no support at x = 0");
        return support_.front().log_weight;
    }
    double b = beta.value();
    LogSumAcc acc;
    for (const auto& p : support_) acc.add(p.log_weight + b * p.x);
    return acc.value();
}

std::vector<double> GrossGibbsModel::probabilities(Beta beta) const {
    std::vector<double> probs(support_.size(), 0.0);
    if (beta.is_ninf()) {
        if (!has_zero_mass()) throw DegenerateModel("Z(-inf) = 0: no support at x = 0");
        probs[0] = 1.0;
        return probs;
    }
    double z = log_partition(beta);
    double b = beta.value();
    for (std::size_t i = 0; i < support_.size(); ++i)
        probs[i] = std::exp(support_[i].log_weight + b * support_[i].x - z);
    return probs;
}

double GrossGibbsModel::mean_hamiltonian(Beta beta) const {
    if (beta.is_ninf()) {
        if (!has_zero_mass()) throw DegenerateModel("Z(-inf) = 0: no support at x = 0");
        return 0.0;
    }
    auto probs = probabilities(beta);
    double mean = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) mean += probs[i] * support_[i].x;
    return mean;
}

double GrossGibbsModel::var_hamiltonian(Beta beta) const {
    if (beta.is_ninf()) {
        if (!has_zero_mass()) throw DegenerateModel("Z(-inf) = 0: no support at x = 0");
        return 0.0;
    }
    auto probs = probabilities(beta);
    double mean = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) mean += probs[i] * support_[i].x;
    double var = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        double d = support_[i].x - mean;
        var += probs[i] * d * d;
    }
    return var;
}

double GrossGibbsModel::curvature_pair(Beta b1, Beta b2) const {
    if (!(b1 < b2)) throw InvalidParameter("curvature_pair requires beta1 < beta2");
    Beta mid = Beta::midpoint(b1, b2);
    // midpoint of (-inf, b) is -inf: the two -inf terms cancel
    return log_partition(b1) - 2.0 * log_partition(mid) + log_partition(b2);
}

double GrossGibbsModel::curvature(const Schedule& schedule) const {
    double total = 0.0;
    auto betas = schedule.betas();
    for (std::size_t i = 0; i + 1 < betas.size(); ++i)
        total += curvature_pair(betas[i], betas[i + 1]);
    return total;
}

double GrossGibbsModel::maxwidth(const Schedule& schedule) const {
    double mw = 0.0;
    auto betas = schedule.betas();
    double prev = log_partition(betas[0]);
    for (std::size_t i = 1; i < betas.size(); ++i) {
        double cur = log_partition(betas[i]);
        mw = std::max(mw, cur - prev);
        prev = cur;
    }
    return mw;
}

Width GrossGibbsModel::width(const Schedule& schedule, Beta x) const {
    if (!(schedule.front() < x && x < schedule.back()))
        throw OutOfRange("width probe must lie strictly inside (beta_min, beta_max)");
    auto betas = schedule.betas();
    // half-open convention x in [beta_v, beta_{v+1})
    auto it = std::upper_bound(betas.begin(), betas.end(), x);
    std::size_t v = static_cast<std::size_t>(it - betas.begin()) - 1;
    double zx = log_partition(x);
    Width w;
    w.minus = zx - log_partition(betas[v]);
    w.plus = log_partition(betas[v + 1]) - zx;
    return w;
}

double GrossGibbsModel::sample(Beta beta, Rng& rng) const {
    if (beta.is_ninf()) {
        if (!has_zero_mass()) throw DegenerateModel("Z(-inf) = 0: no support at x = 0");
        return 0.0;
    }
    auto probs = probabilities(beta);
    double u = rng.uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return support_[i].x;
    }
    return support_.back().x;  // fp slack
}

}  // namespace anneal
