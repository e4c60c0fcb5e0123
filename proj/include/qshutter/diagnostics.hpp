// SPDX-License-Identifier: MIT
#pragma once

#include <vector>

#include "qshutter/propagator.hpp"

namespace qshutter {

enum class Mode { cutoff, packet };

/// Barrier + initial condition + pole table, the full problem statement.
/// Non-owning view of the table; keep it alive while the problem is used.
struct ShutterProblem {
    BarrierParams barrier;
    PacketParams packet;
    const PoleTable* table;

    Mode mode() const { return packet.cutoff_mode() ? Mode::cutoff : Mode::packet; }
    double t_f() const;  ///< free passage time for this k0
    Complex psi(double x, double t) const;
    ValueAndTimeDerivative psi_with_dt(double x, double t) const;
};

/// |Psi(x,t)|^2 sampled on a time grid. Densities are dimensionless in
/// cutoff mode (the state is non-normalizable) and carry nm^-1 in packet
/// mode; mode is recorded so the two are never compared in absolute terms.
struct DensityTimeSeries {
    double x = 0.0;
    Mode mode = Mode::cutoff;
    double t_f = 0.0;
    std::vector<double> t_fs;
    std::vector<double> t_over_tf;
    std::vector<Complex> psi;
    std::vector<double> density;
};

struct ResonancePeak {
    double t_p;                ///< fs
    double t_p_over_tf;
    double peak_density;
    double refinement_width;   ///< final golden-section bracket width, fs
};

struct TransmissionSplit {
    double p_under;
    double p_over;
};

/// Uniform time grid over [t_min, t_max], inclusive, steps >= 2 points.
std::vector<double> uniform_grid(double t_min, double t_max, int steps);

DensityTimeSeries density_series(const ShutterProblem& prob, double x,
                                 const std::vector<double>& t_grid);

/// Coarse scan of |Psi(x,.)|^2 over [t_min, t_max] (coarse_steps points),
/// then golden-section refinement of the interior maximum on the analytic
/// density down to a bracket width of 1e-4 t_f. Defaults follow the
/// resonance scale: [0.01, 5] t_f with 2000 points.
ResonancePeak find_peak(const ShutterProblem& prob, double x);
ResonancePeak find_peak(const ShutterProblem& prob, double x, double t_min,
                        double t_max, int coarse_steps);

/// Under/over-barrier transmission probabilities
///   P_under = int_0^{k_V} |T|^2 |phi|^2 dk,  P_over = int_{k_V}^inf ...,
/// the upper limit truncated where the rigorous Lorentzian tail bound
/// (using |T| <= 1) drops below 1e-6 of the running estimate.
TransmissionSplit transmission_split(const PacketParams& packet, const BarrierParams& b);

/// Local average frequency -Im[(dPsi/dt)/Psi], fs^-1.
double local_frequency(const ShutterProblem& prob, double x, double t);

/// Instantaneous bandwidth |Re[(dPsi/dt)/Psi]|, fs^-1.
double bandwidth(const ShutterProblem& prob, double x, double t);

/// <E> = (1 + (delta/k0)^2) E0 in eV, the packet's operative mean energy.
double mean_energy(const PacketParams& packet, double m_ratio);

}  // namespace qshutter
