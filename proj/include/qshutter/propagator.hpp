// SPDX-License-Identifier: MIT
#pragma once

#include <utility>

#include "qshutter/barrier.hpp"

namespace qshutter {

/// Shutter initial condition. delta = 0 selects the cutoff plane wave
/// 2i sin(k0 x) theta(-x); delta > 0 the normalized Lorentzian packet
/// 4 pi A e^{delta x} sin(k0 x) theta(-x).
struct PacketParams {
    double k0;     ///< nm^-1, > 0
    double delta;  ///< nm^-1, >= 0

    PacketParams(double k0_per_nm, double delta_per_nm);
    bool cutoff_mode() const { return delta == 0.0; }
    /// A = sqrt(delta (1 + (delta/k0)^2)) / (2 pi); packet mode only.
    double amplitude() const;
};

/// Point where a transmitted-region wave function is evaluated.
struct EvaluationPoint {
    double x;  ///< nm
    double t;  ///< fs, > 0
};

/// Value and analytic time derivative evaluated in one pass.
struct ValueAndTimeDerivative {
    Complex value;
    Complex dt;
};

/// Moshinsky propagation kernel
///   M(x,q;t) = (1/2) exp(i m x^2 / 2 hbar t) w(i y_q),
///   y_q = e^{-i pi/4} sqrt(m / 2 hbar t) (x - hbar q t / m).
Complex m_function(double x, Complex q, double t, double m_ratio);

/// dM/dt from the closed form, using w'(z) = -2 z w(z) + 2i/sqrt(pi).
Complex m_function_dt(double x, Complex q, double t, double m_ratio);

ValueAndTimeDerivative m_function_with_dt(double x, Complex q, double t, double m_ratio);

/// Transmitted wave for the cutoff plane wave initial condition:
///   T(k0) M(x,k0;t) - T(-k0) M(x,-k0;t)
///     - 2 k0 sum_n r_n/(k0^2 - k_n^2) M(x,k_n;t),
/// summed over (n, -n) pairs with compensated accumulation.
Complex psi_cutoff(EvaluationPoint pt, const BarrierParams& b, double k0,
                   const PoleTable& table);

/// Transmitted wave for the Lorentzian packet:
///   -i sqrt(delta (1+(delta/k0)^2)) [ T(k0-i delta) M(x,k0-i delta;t)
///     - T(-k0-i delta) M(x,-k0-i delta;t)
///     - 2 k0 sum_n r_n/(k0^2 - (k_n+i delta)^2) M(x,k_n;t) ].
Complex psi_packet(EvaluationPoint pt, const BarrierParams& b,
                   const PacketParams& packet, const PoleTable& table);

/// Same assemblies with the analytic d/dt alongside (used by diagnostics).
ValueAndTimeDerivative psi_cutoff_with_dt(EvaluationPoint pt, const BarrierParams& b,
                                          double k0, const PoleTable& table);
ValueAndTimeDerivative psi_packet_with_dt(EvaluationPoint pt, const BarrierParams& b,
                                          const PacketParams& packet,
                                          const PoleTable& table);

/// Initial packet in configuration space (zero for x >= 0).
Complex initial_packet(double x, const PacketParams& packet);

/// Momentum-space wave function, a difference of Lorentzians at +-k0.
Complex phi_k(double k, const PacketParams& packet);

/// Pair ((i/sqrt(delta)) psi_packet, psi_cutoff) at the same point, for
/// checking that the packet solution recovers the cutoff one as delta->0.
std::pair<Complex, Complex> delta_limit_check(EvaluationPoint pt, const BarrierParams& b,
                                              double k0, const PoleTable& table,
                                              double delta_small);

}  // namespace qshutter
