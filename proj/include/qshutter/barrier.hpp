// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <vector>

namespace qshutter {

using Complex = std::complex<double>;

/// Rectangular barrier of height V0 on [0, d], effective mass m_ratio*m_e.
struct BarrierParams {
    double V0;       ///< eV, > 0
    double d;        ///< nm, > 0
    double m_ratio;  ///< dimensionless, > 0
    double k_V;      ///< nm^-1, sqrt(2 m V0)/hbar (derived)

    BarrierParams(double V0_eV, double d_nm, double mass_ratio);
};

/// g(k) = exp(-ikd)/T(k), an entire function of k except a simple pole at
/// k = 0. Evaluated through even-in-q combinations so the branch of
/// q = sqrt(k^2 - k_V^2) never matters.
Complex g_function(Complex k, const BarrierParams& b);

/// Closed-form dg/dk, same branch-stable construction.
Complex g_derivative(Complex k, const BarrierParams& b);

/// Transmission amplitude T(k) = exp(-ikd)/g(k).
Complex transmission_amplitude(Complex k, const BarrierParams& b);

/// One transmission-amplitude pole. Index n is signed and nonzero;
/// sign(Re k) == sign(n), poles ordered by |Re k| within each sign.
struct Pole {
    int n;
    Complex k;          ///< nm^-1, Im k < 0
    Complex r;          ///< residue, nm^-1
    double g_residual;  ///< |g(k)| after Newton refinement
};

struct PoleTable {
    BarrierParams params;
    int count_per_quadrant = 0;
    int axis_pole_count = 0;  ///< zeros found in the strip around Re k = 0
    /// Stored as n = +1..+N followed by n = -1..-N.
    std::vector<Pole> poles;

    const Pole& pole(int n) const;  ///< signed-index lookup
};

/// Locates count_per_quadrant poles in the fourth quadrant plus mirror
/// partners, refines each by Newton to |dk| <= 1e-13 |k|, and certifies
/// completeness with a winding-number count over an enclosing rectangle.
/// Throws SeedFailureError / CompletenessError on failure.
PoleTable find_poles(const BarrierParams& b, int count_per_quadrant);

/// Residue from the closed-form expression in terms of k_n alone.
Complex residue_explicit(Complex k_n, const BarrierParams& b);

/// Residue from the normalized resonant eigenfunction,
/// r_n = i u_n(0) u_n(d) exp(-i k_n d). Independent route used as a
/// cross-check of residue_explicit.
Complex residue_eigenfunction(Complex k_n, const BarrierParams& b);

/// Pole expansion of T at real k: symmetric partial sum of
/// r_n/(k - k_n) + r_n/k_n with (n, -n) pairing before accumulation.
Complex mittag_leffler_T(double k, const PoleTable& table);

/// Zero count of g inside an axis-aligned rectangle by tracking the phase
/// of g along the boundary. `indent_origin` carves a small semicircular
/// detour below k = 0 when an edge would pass through the singularity.
int count_zeros_rectangle(const BarrierParams& b, Complex lo, Complex hi,
                          bool indent_origin = false);

}  // namespace qshutter
