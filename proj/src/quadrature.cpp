// SPDX-License-Identifier: MIT
#include "qshutter/quadrature.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace qshutter {

namespace {

constexpr int kOrder = 12;

struct GaussRule {
    std::array<double, kOrder> nodes{};
    std::array<double, kOrder> weights{};
};

// Gauss-Legendre nodes on [-1, 1] by Newton iteration on P_n. Computing
// them at startup avoids hard-coding 17-digit tables.
GaussRule make_rule() {
    GaussRule rule;
    const int n = kOrder;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

const GaussRule& rule() {
    static const GaussRule r = make_rule();
    return r;
}

std::complex<double> panel(const ComplexIntegrand& f, double a, double b, long& evals) {
    const GaussRule& r = rule();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::complex<double> acc = 0.0;
    for (int i = 0; i < kOrder; ++i)
        acc += r.weights[i] * f(mid + half * r.nodes[i]);
    evals += kOrder;
    return acc * half;
}

void refine(const ComplexIntegrand& f, double a, double b, std::complex<double> whole,
            double tol, int depth, int max_depth, QuadratureResult& out) {
    const double mid = 0.5 * (a + b);
    const std::complex<double> left = panel(f, a, mid, out.evaluations);
    const std::complex<double> right = panel(f, mid, b, out.evaluations);
    const double disc = std::abs(left + right - whole);
    if (disc <= tol || depth >= max_depth) {
        out.value += left + right;
        out.error_bound += disc;
        if (disc > tol) out.converged = false;
        return;
    }
    refine(f, a, mid, left, 0.5 * tol, depth + 1, max_depth, out);
    refine(f, mid, b, right, 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace

QuadratureResult integrate_adaptive(const ComplexIntegrand& f, double a, double b,
                                    double abs_tol, int max_depth) {
    QuadratureResult out;
    if (a == b) return out;
    const std::complex<double> whole = panel(f, a, b, out.evaluations);
    refine(f, a, b, whole, abs_tol, 0, max_depth, out);
    return out;
}

QuadratureResult integrate_adaptive_segmented(const ComplexIntegrand& f,
                                              const std::vector<double>& breaks,
                                              double abs_tol, int max_depth) {
    QuadratureResult out;
    if (breaks.size() < 2) return out;
    const double seg_tol = abs_tol / double(breaks.size() - 1);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        out += integrate_adaptive(f, breaks[i], breaks[i + 1], seg_tol, max_depth);
    return out;
}

}  // namespace qshutter
