// SPDX-License-Identifier: MIT
#pragma once

#include <vector>

#include "qshutter/diagnostics.hpp"
#include "qshutter/propagator.hpp"

namespace qshutter {

/// Brute-force validators, all independent of the pole/Faddeeva pipeline.
namespace oracles {

/// Transmitted wave from the spectral representation
///   Psi(x,t) = int dk/sqrt(2 pi) phi(k) T(k) exp(i k x - i hbar k^2 t/2m),
/// by adaptive quadrature on the real axis. Truncation starts at
/// |k| = k0 + 400 delta and extends until a rigorous integration-by-parts
/// tail bound falls below tolerance. Throws IntegrationError when the
/// requested absolute tolerance cannot be certified.
Complex spectral_psi(double x, double t, const PacketParams& packet,
                     const BarrierParams& b, double abs_tol = 1e-8);

/// Defining integral of the M function,
///   (i/2 pi) int dk exp(i k x - i hbar k^2 t/2m) / (k - q),  Im q != 0,
/// evaluated on the steepest-descent line through the stationary point
/// (where the Fresnel factor becomes a Gaussian) plus the explicit
/// residue term when the deformation sweeps past the pole.
Complex m_quadrature(double x, Complex q, double t, double m_ratio,
                     double abs_tol = 1e-9);

/// Spatial grid for the Crank-Nicolson solver.
struct GridConfig {
    double x_min;   ///< nm; must hold the packet tail: |Psi(x_min,0)| < 1e-12
    double x_max;   ///< nm
    int n_points;
    double dt;      ///< fs
};

/// Production grid for the packet problem: dx = 0.05 nm, dt = 0.01 fs,
/// box sized so the initial tail is below 1e-12 and boundary reflections
/// of 99% of the momentum content cannot reach x_obs within t_max.
GridConfig default_grid(const PacketParams& packet, const BarrierParams& b,
                        double x_obs, double t_max);

/// Unitary Cayley-form evolution of the 1D Schroedinger equation with an
/// arbitrary potential on a Dirichlet box. Exposed separately so free
/// particle benchmarks can drive it directly.
class CrankNicolson1D {
public:
    CrankNicolson1D(double x_min, double x_max, int n_points, double dt,
                    double m_ratio, std::vector<double> potential,
                    std::vector<Complex> psi0);

    void step(int n_steps = 1);
    double time() const { return time_; }
    double dx() const { return dx_; }
    double x(int i) const { return x_min_ + i * dx_; }
    const std::vector<Complex>& state() const { return psi_; }
    double norm() const;              ///< int |psi|^2 dx (trapezoid)
    double position_mean() const;
    double position_stddev() const;

private:
    double x_min_, dx_, dt_, time_ = 0.0;
    std::vector<Complex> diag_, cprime_;  // prefactored Thomas coefficients
    Complex off_;
    std::vector<Complex> rhs_diag_;
    Complex rhs_off_;
    std::vector<Complex> psi_, work_;
};

struct CrankNicolsonRun {
    DensityTimeSeries series;
    double norm_initial = 0.0;
    double norm_final = 0.0;
};

/// Evolves the Lorentzian packet under the barrier Hamiltonian and samples
/// |Psi(x_obs,t)|^2 at the step times nearest the requested grid. Throws
/// BoxTooSmallError if boundary reflections could reach x_obs in time.
CrankNicolsonRun crank_nicolson_density(double x_obs, const std::vector<double>& t_grid,
                                        const PacketParams& packet,
                                        const BarrierParams& b, const GridConfig& grid);

}  // namespace oracles
}  // namespace qshutter
