#include "anneal/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "anneal/errors.hpp"

namespace anneal {

namespace {

bool close(Beta a, Beta b) {
    if (a.is_ninf() || b.is_ninf()) return a.is_ninf() && b.is_ninf();
    double tol = 1e-12 * std::max({1.0, std::abs(a.value()), std::abs(b.value())});
    return std::abs(a.value() - b.value()) <= tol;
}

}  // namespace

Schedule Schedule::from_betas(std::vector<Beta> betas) {
    if (betas.size() < 2) throw InvalidParameter("schedule needs at least two points");
    std::sort(betas.begin(), betas.end());
    std::vector<Beta> dedup;
    dedup.reserve(betas.size());
    for (const auto& b : betas) {
        if (dedup.empty() || !close(dedup.back(), b)) dedup.push_back(b);
    }
    if (dedup.size() < 2) throw InvalidParameter("schedule collapsed to a single point");
    Schedule s;
    s.betas_ = std::move(dedup);
    return s;
}

Schedule Schedule::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open schedule file: " + path);
    std::vector<Beta> betas;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        betas.push_back(Beta::parse(line));
    }
    return from_betas(std::move(betas));
}

void Schedule::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write schedule file: " + path);
    for (const auto& b : betas_) out << b.str() << "\n";
}

}  // namespace anneal
