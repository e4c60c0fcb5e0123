// SPDX-License-Identifier: MIT
#include "qshutter/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qshutter/errors.hpp"
#include "qshutter/sum.hpp"
#include "qshutter/units.hpp"

namespace qshutter {

namespace {

const Complex kI{0.0, 1.0};

// g has two algebraically identical forms:
//
//   trig:  g = cos(qd) - (i/2) ((k^2+q^2)/(kq)) sin(qd)
//   split: g = [ (k+q)^2 e^{-iqd} - (k-q)^2 e^{+iqd} ] / (4kq)
//
// Both are even in q. The split form is the accurate one near zeros of g,
// where the two exponential terms balance: evaluated this way the
// cancellation happens between terms known to full relative precision,
// with k-q computed as k_V^2/(k+q) to avoid the subtractive loss.
// The trig form takes over for |qd| < 1/2 where 4kq degenerates, with
// series forms of cos(qd) and sin(qd)/q below |qd| = 1e-4.

struct GParts {
    Complex q2, q, qd;
    bool small;  // |qd| < 0.5
};

GParts split_q(Complex k, const BarrierParams& b) {
    GParts p;
    p.q2 = k * k - b.k_V * b.k_V;
    p.q = std::sqrt(p.q2);
    p.qd = p.q * b.d;
    p.small = std::abs(p.qd) < 0.5;
    return p;
}

// sin(qd)/q, even in q
Complex sinc_qd(const GParts& p, double d) {
    const Complex x2 = p.qd * p.qd;
    if (std::abs(p.qd) < 1e-4)
        return d * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
    return std::sin(p.qd) / p.q;
}

Complex cos_qd(const GParts& p) {
    if (std::abs(p.qd) < 1e-4) {
        const Complex x2 = p.qd * p.qd;
        return 1.0 - x2 / 2.0 + x2 * x2 / 24.0;
    }
    return std::cos(p.qd);
}

// (d cos(qd) - sin(qd)/q) / q^2, even in q, regular at q = 0
Complex dcos_minus_sinc_over_q2(const GParts& p, double d) {
    if (std::abs(p.qd) < 1e-4) {
        const Complex x2 = p.qd * p.qd;
        return d * d * d * (-1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0);
    }
    return (d * std::cos(p.qd) - std::sin(p.qd) / p.q) / p.q2;
}

void require_nonzero(Complex k, const char* who) {
    if (k == Complex{0.0, 0.0})
        throw DomainError(std::string(who) + ": g(k) diverges at k = 0");
}

}  // namespace

BarrierParams::BarrierParams(double V0_eV, double d_nm, double mass_ratio)
    : V0(V0_eV), d(d_nm), m_ratio(mass_ratio),
      k_V(0.0) {
    if (V0 <= 0.0) throw DomainError("BarrierParams: V0 must be > 0");
    if (d <= 0.0) throw DomainError("BarrierParams: d must be > 0");
    if (m_ratio <= 0.0) throw DomainError("BarrierParams: m_ratio must be > 0");
    k_V = units::wavenumber_from_energy(V0, m_ratio);
}

Complex g_function(Complex k, const BarrierParams& b) {
    require_nonzero(k, "g_function");
    const GParts p = split_q(k, b);
    if (p.small) {
        const Complex coef = (k * k + p.q2) / k;
        return cos_qd(p) - 0.5 * kI * coef * sinc_qd(p, b.d);
    }
    const Complex sp = k + p.q;
    const Complex sm = (b.k_V * b.k_V) / sp;  // k - q without cancellation
    const Complex A = sp * sp * std::exp(-kI * p.qd);
    const Complex B = sm * sm * std::exp(kI * p.qd);
    return (A - B) / (4.0 * k * p.q);
}

Complex g_derivative(Complex k, const BarrierParams& b) {
    require_nonzero(k, "g_derivative");
    const GParts p = split_q(k, b);
    if (p.small) {
        const Complex s = sinc_qd(p, b.d);
        const Complex dcs = dcos_minus_sinc_over_q2(p, b.d);
        const Complex coef = (k * k + p.q2) / k;
        const Complex dcoef = 3.0 - p.q2 / (k * k);
        // dc/dk = -d k s ; ds/dk = k (d c - s)/q^2
        return -b.d * k * s - 0.5 * kI * (dcoef * s + coef * k * dcs);
    }
    const Complex sp = k + p.q;
    const Complex sm = (b.k_V * b.k_V) / sp;
    const Complex A = sp * sp * std::exp(-kI * p.qd);
    const Complex B = sm * sm * std::exp(kI * p.qd);
    return (2.0 - kI * b.d * k) * (A + B) / (4.0 * k * p.q2) -
           (A - B) * (p.q2 + k * k) / (4.0 * k * k * p.q2 * p.q);
}

Complex transmission_amplitude(Complex k, const BarrierParams& b) {
    require_nonzero(k, "transmission_amplitude");
    return std::exp(-kI * k * b.d) / g_function(k, b);
}

const Pole& PoleTable::pole(int n) const {
    const int N = count_per_quadrant;
    if (n == 0 || std::abs(n) > N)
        throw DomainError("PoleTable::pole: index out of range");
    return n > 0 ? poles[n - 1] : poles[N - n - 1];
}

Complex residue_explicit(Complex k_n, const BarrierParams& b) {
    const Complex q2 = k_n * k_n - b.k_V * b.k_V;
    const Complex q = std::sqrt(q2);
    const Complex sin_qd = std::sin(q * b.d);
    if (sin_qd == Complex{0.0, 0.0})
        throw DegeneratePoleError("residue_explicit: sin(q d) = 0");
    const double kV4 = b.k_V * b.k_V * b.k_V * b.k_V;
    // (q^2)^{3/2} and sin(d q) share the same q, so the ratio is
    // branch-invariant: q^3/sin(qd) is even in q.
    return 4.0 * k_n * k_n * q * q2 * std::exp(-kI * k_n * b.d) /
           (kV4 * (k_n * b.d + 2.0 * kI) * sin_qd);
}

Complex residue_eigenfunction(Complex k_n, const BarrierParams& b) {
    const Complex q = std::sqrt(k_n * k_n - b.k_V * b.k_V);
    if (q == k_n || std::abs(q - k_n) < 1e-14 * std::abs(k_n))
        throw DegeneratePoleError("residue_eigenfunction: q = k, D diverges");
    const Complex D = (q + k_n) / (q - k_n);
    const Complex eqd = std::exp(kI * q * b.d);
    const Complex emqd = 1.0 / eqd;
    // integral of (e^{iqx} + D e^{-iqx})^2 over [0, d], closed form
    const Complex P = (eqd * eqd - 1.0) / (2.0 * kI * q) + 2.0 * D * b.d +
                      D * D * (1.0 - emqd * emqd) / (2.0 * kI * q);
    const Complex u0 = 1.0 + D;
    const Complex ud = eqd + D * emqd;
    const Complex norm = P + kI * (u0 * u0 + ud * ud) / (2.0 * k_n);
    if (std::abs(norm) == 0.0)
        throw DegeneratePoleError("residue_eigenfunction: zero normalization sum");
    const Complex C2 = 1.0 / norm;
    return kI * C2 * u0 * ud * std::exp(-kI * k_n * b.d);
}

Complex mittag_leffler_T(double k, const PoleTable& table) {
    const int N = table.count_per_quadrant;
    ComplexKahanSum acc;
    for (int n = 1; n <= N; ++n) {
        const Pole& p = table.pole(n);
        const Pole& m = table.pole(-n);
        const Complex pair = p.r / (k - p.k) + p.r / p.k +
                             m.r / (k - m.k) + m.r / m.k;
        acc.add(pair);
    }
    return acc.value();
}

namespace {

// ---- pole search -----------------------------------------------------

// Large-n asymptotics of the zeros: q_n d ~ n pi - i log(4 n^2 pi^2 / (kV d)^2).
Complex seed_qd(int n, const BarrierParams& b) {
    const double u = n * M_PI;
    const double v = std::log(4.0 * u * u / (b.k_V * b.d * b.k_V * b.d));
    return {u, -v};
}

Complex k_of_qd(Complex qd, const BarrierParams& b) {
    const Complex q = qd / b.d;
    Complex k = std::sqrt(q * q + b.k_V * b.k_V);
    return k.real() >= 0.0 ? k : -k;
}

// Newton on g, converged when |dk| <= 1e-13 |k|.
bool newton_refine(Complex& k, const BarrierParams& b, int max_iter = 100) {
    for (int i = 0; i < max_iter; ++i) {
        const Complex dk = -g_function(k, b) / g_derivative(k, b);
        k += dk;
        if (std::abs(dk) <= 1e-13 * std::abs(k)) return true;
    }
    return false;
}

// Phase-tracked change of arg g along the straight segment [za, zb],
// subdividing until consecutive samples differ by less than pi/2.
double phase_sweep(const BarrierParams& b, Complex za, Complex zb, Complex ga, Complex gb,
                   int depth = 0) {
    double dphi = std::arg(gb / ga);
    if (std::abs(dphi) < M_PI / 2.0) {
        if (depth > 4 || std::abs(dphi) < M_PI / 8.0) return dphi;
    }
    if (depth > 48)
        throw Error("count_zeros_rectangle: phase tracking failed to resolve");
    const Complex zm = 0.5 * (za + zb);
    const Complex gm = g_function(zm, b);
    return phase_sweep(b, za, zm, ga, gm, depth + 1) +
           phase_sweep(b, zm, zb, gm, gb, depth + 1);
}

double phase_edge(const BarrierParams& b, Complex za, Complex zb) {
    // Initial sampling must resolve the phase already: arg g turns at a
    // rate of about d per unit k where the exponential in qd dominates,
    // and aliasing by full turns would defeat the recursive refinement.
    const double len = std::abs(zb - za);
    const int n0 = std::max(32, static_cast<int>(std::ceil(2.0 * len * b.d)));
    double total = 0.0;
    Complex zprev = za;
    Complex gprev = g_function(zprev, b);
    for (int i = 1; i <= n0; ++i) {
        const Complex z = za + (zb - za) * (double(i) / n0);
        const Complex gz = g_function(z, b);
        total += phase_sweep(b, zprev, z, gprev, gz);
        zprev = z;
        gprev = gz;
    }
    return total;
}

}  // namespace

int count_zeros_rectangle(const BarrierParams& b, Complex lo, Complex hi,
                          bool indent_origin) {
    const Complex bl = lo;
    const Complex br{hi.real(), lo.imag()};
    const Complex tr = hi;
    const Complex tl{lo.real(), hi.imag()};
    double total = 0.0;
    total += phase_edge(b, bl, br);
    total += phase_edge(b, br, tr);
    if (indent_origin && hi.imag() == 0.0 && lo.real() < 0.0 && hi.real() > 0.0) {
        // top edge runs right-to-left through k = 0; detour below it on a
        // semicircle small enough that no zero is excluded (|g| -> inf).
        const double rho = std::min({1e-3, 0.01 * b.k_V, 0.1 * hi.real(), -0.1 * lo.real()});
        total += phase_edge(b, tr, Complex{rho, 0.0});
        Complex zprev{rho, 0.0};
        Complex gprev = g_function(zprev, b);
        const int arc_steps = 24;
        for (int i = 1; i <= arc_steps; ++i) {
            const double th = -M_PI * double(i) / arc_steps;
            const Complex z = rho * std::exp(Complex{0.0, th});
            const Complex gz = g_function(z, b);
            total += phase_sweep(b, zprev, z, gprev, gz);
            zprev = z;
            gprev = gz;
        }
        total += phase_edge(b, Complex{-rho, 0.0}, tl);
    } else {
        total += phase_edge(b, tr, tl);
    }
    total += phase_edge(b, tl, bl);
    const double winding = total / (2.0 * M_PI);
    const long rounded = std::lround(winding);
    if (std::abs(winding - double(rounded)) > 0.05)
        throw Error("count_zeros_rectangle: winding number " +
                    std::to_string(winding) + " is not an integer");
    return static_cast<int>(rounded);
}

PoleTable find_poles(const BarrierParams& b, int count_per_quadrant) {
    if (count_per_quadrant < 1)
        throw DomainError("find_poles: count_per_quadrant must be >= 1");
    const int N = count_per_quadrant;

    std::vector<Complex> ks(N + 1);
    for (int n = N; n >= 1; --n) {
        Complex k = k_of_qd(seed_qd(n, b), b);
        bool ok = newton_refine(k, b);
        if ((!ok || k.real() <= 0.0 || k.imag() >= 0.0) && n < N) {
            // continuation from the already-converged neighbor above
            const Complex qd_up = std::sqrt(ks[n + 1] * ks[n + 1] - b.k_V * b.k_V) * b.d;
            Complex qd = qd_up - M_PI + 2.0 * kI * std::log(double(n + 1) / double(n));
            if (qd.real() < 0.0) qd = Complex{-qd.real(), qd.imag()};
            k = k_of_qd(qd, b);
            ok = newton_refine(k, b);
        }
        if (!ok)
            throw SeedFailureError(n, "Newton refinement did not converge");
        if (k.real() <= 0.0 || k.imag() >= 0.0)
            throw SeedFailureError(n, "refined pole left the fourth quadrant");
        ks[n] = k;
    }

    // basin sanity: strictly increasing along Re, no duplicates
    for (int n = 1; n < N; ++n) {
        if (!(ks[n + 1].real() > ks[n].real()) ||
            std::abs(ks[n + 1] - ks[n]) < 0.1 * M_PI / b.d)
            throw SeedFailureError(n, "adjacent seeds collapsed to one zero");
    }

    PoleTable table{b, N, 0, {}};
    table.poles.reserve(2 * N);
    for (int n = 1; n <= N; ++n) {
        const Complex k = ks[n];
        table.poles.push_back(Pole{n, k, residue_explicit(k, b),
                                   std::abs(g_function(k, b))});
    }
    for (int n = 1; n <= N; ++n) {
        // mirror partner: g(-conj k) = conj g(k), so -conj(k_n) is a zero
        Complex k = -std::conj(ks[n]);
        newton_refine(k, b);
        table.poles.push_back(Pole{-n, k, residue_explicit(k, b),
                                   std::abs(g_function(k, b))});
    }

    for (const Pole& p : table.poles) {
        const double bound = 1e-12 * std::abs(g_derivative(p.k, b) * p.k);
        if (!(p.g_residual <= bound))
            throw SeedFailureError(p.n, "pole residual exceeds refinement bound");
    }

    // completeness: winding count over a rectangle that encloses exactly
    // the stored fourth-quadrant poles
    double min_re = ks[1].real(), max_re = ks[1].real(), min_im = ks[1].imag();
    for (int n = 1; n <= N; ++n) {
        min_re = std::min(min_re, ks[n].real());
        max_re = std::max(max_re, ks[n].real());
        min_im = std::min(min_im, ks[n].imag());
    }
    const double x_lo = 0.5 * min_re;
    const double x_hi = max_re + 0.5 * M_PI / b.d;
    const double y_lo = 1.2 * min_im - 0.5 / b.d;
    const int found = count_zeros_rectangle(b, Complex{x_lo, y_lo}, Complex{x_hi, 0.0});
    if (found != N)
        throw CompletenessError(N, found);

    // strip around the imaginary axis: the paper's indexing leaves open
    // whether an n = 0 pole exists; count and report instead of assuming
    table.axis_pole_count =
        count_zeros_rectangle(b, Complex{-x_lo, y_lo}, Complex{x_lo, 0.0}, true);

    return table;
}

}  // namespace qshutter
