#pragma once

#include <cstdint>
#include <random>

#include "anneal/beta.hpp"

namespace anneal {

// splitmix64 finalizer; used to derive independent sub-seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) { return mix64(mix64(a) ^ b); }

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix64(mix64(a, b) ^ c);
}

// Seed for the engine behind stream `stream` of an oracle at inverse
// temperature `beta`. -inf is canonicalized before taking the bit pattern.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream, Beta beta) {
    std::uint64_t bbits;
    double v = beta.value();
    static_assert(sizeof(double) == sizeof(std::uint64_t));
    __builtin_memcpy(&bbits, &v, sizeof(v));
    return mix64(seed, stream, bbits);
}

// mt19937_64 wrapper with explicitly-coded variate transforms so that output
// is reproducible across standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // uniform in [0, 1), 53-bit resolution
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1]
    double uniform01_open() { return 1.0 - uniform01(); }

    // unit-rate exponential as -ln(U), U in (0, 1]
    double exponential() { return -std::log(uniform01_open()); }

    // uniform integer in [0, n); n > 0 (Lemire multiply-shift)
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>((static_cast<__uint128_t>(eng_()) * n) >> 64);
    }

    bool bernoulli(double p) { return uniform01() < p; }

  private:
    std::mt19937_64 eng_;
};

}  // namespace anneal
