// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <functional>

namespace qshutter {

struct QuadratureResult {
    std::complex<double> value{0.0, 0.0};
    double error_bound = 0.0;  ///< accumulated estimate, meant to be honest
    long evaluations = 0;
    bool converged = true;

    QuadratureResult& operator+=(const QuadratureResult& o) {
        value += o.value;
        error_bound += o.error_bound;
        evaluations += o.evaluations;
        converged = converged && o.converged;
        return *this;
    }
};

using ComplexIntegrand = std::function<std::complex<double>(double)>;

/// Adaptive quadrature of a complex-valued integrand on [a, b].
///
/// Each panel is judged by comparing one 12-point Gauss-Legendre rule
/// against the sum over its two halves; panels that disagree are split.
/// The returned error_bound sums the accepted-panel discrepancies.
/// converged == false means some panel hit max_depth before reaching
/// its share of abs_tol; the value is still the best available estimate.
QuadratureResult integrate_adaptive(const ComplexIntegrand& f, double a, double b,
                                    double abs_tol, int max_depth = 48);

/// Same, but the caller supplies initial break points (singularities,
/// peaks, phase landmarks). Tolerance is spread across the segments.
QuadratureResult integrate_adaptive_segmented(const ComplexIntegrand& f,
                                              const std::vector<double>& breaks,
                                              double abs_tol, int max_depth = 48);

}  // namespace qshutter
