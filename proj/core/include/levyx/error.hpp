#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace levyx {

enum class ErrorKind {
    Config,       // malformed input, unknown keys, bad option values
    Domain,       // evaluation outside an admissible strip or region
    Budget,       // jet order too small for the requested operator
    Pole,         // jet lifted at a singular point
    Truncation,   // Fourier tail not negligible at the hard cap
    Convergence,  // quadrature or root finding failed to converge
    Unsupported,  // model/basis combination outside what is implemented
    Numeric,      // anything else numeric
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Library error. The kind drives CLI exit codes and lets callers branch
/// without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) throw Error(kind, what);
}

}  // namespace levyx
