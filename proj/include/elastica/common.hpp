#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace elastica {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHalfPi = 0.5 * kPi;

// Precondition violations (bad arguments, out-of-range flags).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A feasibility precondition on the requested arc length failed.
struct InfeasibleLength : DomainError {
    using DomainError::DomainError;
};

// A search bracket does not contain the requested root/minimizer.
struct BracketViolation : DomainError {
    using DomainError::DomainError;
};

// A constructed object failed one of its type invariants.
struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string& msg, long index = -1)
        : std::runtime_error(msg), index(index) {}
    long index;  // offending vertex/sample index, -1 if not applicable
};

// Adaptive integration could not reach the requested tolerance.
struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file; line is 1-based.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, long line) : std::runtime_error(msg), line(line) {}
    long line;
};

// All reals in reports are printed with 9 significant digits so that
// repeated runs diff cleanly.
inline std::string fmt9(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

// Full-precision form used for geometry files (bodies round-trip bit-exactly).
inline std::string fmt17(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace elastica
