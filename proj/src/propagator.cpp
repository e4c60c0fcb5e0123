// SPDX-License-Identifier: MIT
#include "qshutter/propagator.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "qshutter/errors.hpp"
#include "qshutter/faddeeva.hpp"
#include "qshutter/sum.hpp"
#include "qshutter/units.hpp"

namespace qshutter {

namespace {

const Complex kI{0.0, 1.0};
constexpr double kTwoOverSqrtPi = 1.1283791670955125739;

struct MContext {
    double hm;      // hbar/m, nm^2/fs
    double t;
    double beta2;   // m/(2 hbar t) = 1/(2 hm t)
    double beta;    // sqrt(beta2)
    Complex e4;     // e^{-i pi/4}
    Complex prefactor;  // (1/2) exp(i beta2 x^2)
    double x;

    MContext(double x_, double t_, double m_ratio) {
        if (t_ <= 0.0) throw DomainError("m_function: t must be > 0");
        hm = units::hbar_over_mass(m_ratio);
        t = t_;
        x = x_;
        beta2 = 1.0 / (2.0 * hm * t);
        beta = std::sqrt(beta2);
        e4 = std::exp(Complex{0.0, -M_PI / 4.0});
        prefactor = 0.5 * std::exp(kI * beta2 * x * x);
    }

    ValueAndTimeDerivative eval(Complex q, bool want_dt) const {
        const Complex y = e4 * beta * (x - hm * q * t);
        const Complex z = kI * y;
        Complex w;
        try {
            w = wofz(z);
        } catch (const OverflowError& e) {
            throw OverflowError("m_function(x=" + std::to_string(x) +
                                    ", t=" + std::to_string(t) + "): " + e.what(),
                                e.exponent);
        }
        ValueAndTimeDerivative out;
        out.value = prefactor * w;
        if (want_dt) {
            const Complex dydt = -y / (2.0 * t) - e4 * beta * hm * q;
            const Complex wprime = -2.0 * z * w + kI * kTwoOverSqrtPi;
            out.dt = prefactor *
                     (-kI * beta2 * x * x / t * w + wprime * kI * dydt);
        }
        return out;
    }
};

// Common assembly of Eq.-(2)-type sums: both initial conditions share the
// structure  c+ M(x,ka;t) + c- M(x,kb;t) - 2 k0 sum_n coeff_n M(x,k_n;t).
ValueAndTimeDerivative assemble(EvaluationPoint pt, const BarrierParams& b,
                                double k0, double delta, const PoleTable& table,
                                bool want_dt) {
    if (pt.x < b.d)
        throw DomainError("psi: transmitted-region formula needs x >= d");
    if (pt.t <= 0.0)
        throw DomainError("psi: t must be > 0");
    const MContext ctx(pt.x, pt.t, b.m_ratio);
    const Complex shift = kI * delta;

    ComplexKahanSum sum;
    ComplexKahanSum sum_dt;
    const int N = table.count_per_quadrant;
    for (int n = 1; n <= N; ++n) {
        Complex pair{};
        Complex pair_dt{};
        for (const int sn : {n, -n}) {
            const Pole& p = table.pole(sn);
            const Complex den = k0 * k0 - (p.k + shift) * (p.k + shift);
            if (delta > 0.0) {
                if (den == Complex{0.0, 0.0})
                    throw IllConditionedTermError(sn, "k0^2 - (k_n + i delta)^2 vanishes");
                if (std::abs(den) < 1e-8 * k0 * k0)
                    std::cerr << "qshutter: warning: term n=" << sn
                              << " is near-degenerate, |k0^2-(k_n+i delta)^2| small\n";
            } else if (std::abs(k0 - std::abs(p.k.real())) <= 1e-12) {
                std::cerr << "qshutter: warning: k0 coincides with Re(k_" << sn
                          << ") to 1e-12; term is ill-conditioned\n";
            }
            const auto m = ctx.eval(p.k, want_dt);
            pair += p.r / den * m.value;
            if (want_dt) pair_dt += p.r / den * m.dt;
        }
        sum.add(pair);
        if (want_dt) sum_dt.add(pair_dt);
    }

    const Complex ka = k0 - shift;
    const Complex kb = -k0 - shift;
    const Complex Ta = transmission_amplitude(ka, b);
    const Complex Tb = transmission_amplitude(kb, b);
    const auto ma = ctx.eval(ka, want_dt);
    const auto mb = ctx.eval(kb, want_dt);

    ValueAndTimeDerivative out;
    out.value = Ta * ma.value - Tb * mb.value - 2.0 * k0 * sum.value();
    if (want_dt)
        out.dt = Ta * ma.dt - Tb * mb.dt - 2.0 * k0 * sum_dt.value();
    return out;
}

}  // namespace

PacketParams::PacketParams(double k0_per_nm, double delta_per_nm)
    : k0(k0_per_nm), delta(delta_per_nm) {
    if (k0 <= 0.0) throw DomainError("PacketParams: k0 must be > 0");
    if (delta < 0.0) throw DomainError("PacketParams: delta must be >= 0");
}

double PacketParams::amplitude() const {
    if (delta <= 0.0)
        throw DomainError("PacketParams::amplitude: defined for delta > 0 only");
    const double r = delta / k0;
    return std::sqrt(delta * (1.0 + r * r)) / (2.0 * M_PI);
}

Complex m_function(double x, Complex q, double t, double m_ratio) {
    return MContext(x, t, m_ratio).eval(q, false).value;
}

Complex m_function_dt(double x, Complex q, double t, double m_ratio) {
    return MContext(x, t, m_ratio).eval(q, true).dt;
}

ValueAndTimeDerivative m_function_with_dt(double x, Complex q, double t, double m_ratio) {
    return MContext(x, t, m_ratio).eval(q, true);
}

Complex psi_cutoff(EvaluationPoint pt, const BarrierParams& b, double k0,
                   const PoleTable& table) {
    return assemble(pt, b, k0, 0.0, table, false).value;
}

ValueAndTimeDerivative psi_cutoff_with_dt(EvaluationPoint pt, const BarrierParams& b,
                                          double k0, const PoleTable& table) {
    return assemble(pt, b, k0, 0.0, table, true);
}

Complex psi_packet(EvaluationPoint pt, const BarrierParams& b,
                   const PacketParams& packet, const PoleTable& table) {
    if (packet.cutoff_mode())
        throw DomainError("psi_packet: requires delta > 0");
    const double r = packet.delta / packet.k0;
    const Complex pref = -kI * std::sqrt(packet.delta * (1.0 + r * r));
    return pref * assemble(pt, b, packet.k0, packet.delta, table, false).value;
}

ValueAndTimeDerivative psi_packet_with_dt(EvaluationPoint pt, const BarrierParams& b,
                                          const PacketParams& packet,
                                          const PoleTable& table) {
    if (packet.cutoff_mode())
        throw DomainError("psi_packet: requires delta > 0");
    const double r = packet.delta / packet.k0;
    const Complex pref = -kI * std::sqrt(packet.delta * (1.0 + r * r));
    auto out = assemble(pt, b, packet.k0, packet.delta, table, true);
    out.value *= pref;
    out.dt *= pref;
    return out;
}

Complex initial_packet(double x, const PacketParams& packet) {
    if (packet.cutoff_mode())
        throw DomainError("initial_packet: requires delta > 0");
    if (x >= 0.0) return {0.0, 0.0};
    return 4.0 * M_PI * packet.amplitude() * std::exp(packet.delta * x) *
           std::sin(packet.k0 * x);
}

Complex phi_k(double k, const PacketParams& packet) {
    if (packet.cutoff_mode())
        throw DomainError("phi_k: requires delta > 0");
    const Complex i_delta{0.0, packet.delta};
    return std::sqrt(2.0 * M_PI) * packet.amplitude() *
           (1.0 / (k - packet.k0 + i_delta) - 1.0 / (k + packet.k0 + i_delta));
}

std::pair<Complex, Complex> delta_limit_check(EvaluationPoint pt, const BarrierParams& b,
                                              double k0, const PoleTable& table,
                                              double delta_small) {
    if (delta_small <= 0.0)
        throw DomainError("delta_limit_check: delta_small must be > 0");
    const PacketParams packet(k0, delta_small);
    const Complex rescaled =
        kI / std::sqrt(delta_small) * psi_packet(pt, b, packet, table);
    return {rescaled, psi_cutoff(pt, b, k0, table)};
}

}  // namespace qshutter
