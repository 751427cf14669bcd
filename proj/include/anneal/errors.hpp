#pragma once

#include <stdexcept>
#include <string>

namespace anneal {

// Error taxonomy shared across the library. Each type names the violated
// contract; the CLI maps them onto exit codes.

struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Z(-inf) = c_0 is undefined in log space when the model has no mass at x = 0.
struct DegenerateModel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Enumeration request beyond the brute-force desk caps.
struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAntiferro : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every term of some V_i collapsed to zero: k too small for a -inf segment.
struct AllMassLost : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IterationLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested per-segment sample count exceeds the configured budget and no
// override was given.
struct InfeasibleK : std::runtime_error {
    explicit InfeasibleK(const std::string& msg, double k) : std::runtime_error(msg), k_required(k) {}
    double k_required;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace anneal
