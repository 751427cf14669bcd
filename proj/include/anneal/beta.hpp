#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <string>
#include <string_view>

#include "anneal/errors.hpp"

namespace anneal {

// Inverse-temperature value: a finite double or -inf. +inf and NaN are
// rejected everywhere; ordering is the usual total order with -inf below
// every finite value.
class Beta {
  public:
    Beta() : v_(0.0) {}

    explicit Beta(double v) : v_(v) {
        if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
            throw InvalidParameter("beta must be finite or -inf");
    }

    static Beta ninf() {
        Beta b;
        b.v_ = -std::numeric_limits<double>::infinity();
        return b;
    }

    double value() const { return v_; }
    bool is_ninf() const { return std::isinf(v_); }
    bool is_finite() const { return !std::isinf(v_); }

    friend auto operator<=>(const Beta&, const Beta&) = default;

    // Midpoint of a schedule segment; the midpoint of (-inf, b) is -inf.
    static Beta midpoint(Beta a, Beta b) {
        if (a.is_ninf() || b.is_ninf()) return Beta::ninf();
        return Beta(0.5 * (a.v_ + b.v_));
    }

    std::string str() const;
    static Beta parse(std::string_view token);

  private:
    double v_;
};

// Extended-real product with the convention 0 * (+-inf) = 0. Used for
// exponents of the form (beta' - beta) * x where the gap may be infinite but
// a Hamiltonian value of 0 must contribute exp(0) = 1.
inline double ext_mul(double a, double x) {
    if (x == 0.0 || a == 0.0) return 0.0;
    return a * x;
}

// b - a as an extended real; +inf when a = -inf (and b finite).
inline double beta_gap(Beta a, Beta b) {
    if (a.is_ninf() && b.is_ninf()) return 0.0;
    return b.value() - a.value();
}

}  // namespace anneal
