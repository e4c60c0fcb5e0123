// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <complex>

namespace qshutter {

/// Neumaier-compensated accumulator. The pole series converge slowly and
/// alternate in sign, so the running compensation keeps the accumulated
/// roundoff at one ulp of the final value instead of one ulp per term.
class KahanSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class ComplexKahanSum {
public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum re_;
    KahanSum im_;
};

}  // namespace qshutter
