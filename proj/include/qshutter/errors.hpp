// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qshutter {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

/// A result exceeds the representable floating-point range. Carries the
/// base-e exponent of the offending magnitude so callers can log it.
struct OverflowError : Error {
    double exponent;
    OverflowError(const std::string& msg, double exp_)
        : Error(msg + " (magnitude exponent " + std::to_string(exp_) + ")"),
          exponent(exp_) {}
};

/// Newton refinement failed to converge from every seed tried for pole n.
struct SeedFailureError : Error {
    int index;
    SeedFailureError(int n, const std::string& msg)
        : Error("pole seed " + std::to_string(n) + ": " + msg), index(n) {}
};

/// Argument-principle count disagrees with the number of stored poles.
struct CompletenessError : Error {
    int expected;
    int found;
    CompletenessError(int exp_, int found_)
        : Error("argument principle: expected " + std::to_string(exp_) +
                " zeros, contour count gives " + std::to_string(found_)),
          expected(exp_), found(found_) {}
};

/// A pole sits where a residue formula degenerates (sin(q d) = 0, q = k).
struct DegeneratePoleError : Error {
    using Error::Error;
};

/// A series term k0^2 - (k_n + i*delta)^2 is (numerically) singular.
struct IllConditionedTermError : Error {
    int index;
    IllConditionedTermError(int n, const std::string& msg)
        : Error("term n=" + std::to_string(n) + ": " + msg), index(n) {}
};

/// Adaptive quadrature did not reach the requested tolerance. Carries the
/// best estimate and the error bound actually achieved.
struct IntegrationError : Error {
    std::complex<double> best_estimate;
    double error_bound;
    IntegrationError(const std::string& msg, std::complex<double> best, double bound)
        : Error(msg + " (achieved bound " + std::to_string(bound) + ")"),
          best_estimate(best), error_bound(bound) {}
};

/// Coarse scan put the density maximum on the grid boundary.
struct NoInteriorPeakError : Error {
    using Error::Error;
};

/// Grid-solver box cannot hold the requested evolution time without
/// boundary reflections contaminating the observation point.
struct BoxTooSmallError : Error {
    using Error::Error;
};

/// |Psi| underflowed; the instantaneous frequency is undefined there.
struct UndefinedFrequencyError : Error {
    using Error::Error;
};

/// Run configuration failed validation (unknown key, missing field, ...).
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace qshutter
