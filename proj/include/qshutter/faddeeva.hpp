// SPDX-License-Identifier: MIT
#pragma once

#include <complex>

namespace qshutter {

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
///
/// Relative accuracy is 1e-12 or better in the closed upper half-plane.
/// For Im z < 0 the reflection w(z) = 2 exp(-z^2) - w(-z) is applied; when
/// Re(-z^2) exceeds the representable range this raises OverflowError with
/// the offending exponent instead of silently returning Inf.
std::complex<double> wofz(std::complex<double> z);

}  // namespace qshutter
