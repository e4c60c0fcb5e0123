// SPDX-License-Identifier: MIT
#pragma once

namespace qshutter::units {

/// Fundamental constants of the (eV, nm, fs) unit system used everywhere
/// in this library. Masses enter only as the dimensionless ratio m/m_e.
struct PhysicalConstants {
    double hbar;            ///< eV fs
    double hbar2_over_2me;  ///< hbar^2/(2 m_e), eV nm^2
};

/// The one canonical instance. Values are CODATA-derived conversions.
const PhysicalConstants& constants() noexcept;

/// k = sqrt(E m_ratio / (hbar^2/2me)), in nm^-1. E in eV, E >= 0.
double wavenumber_from_energy(double energy_ev, double m_ratio);

/// Inverse of wavenumber_from_energy: E = (hbar^2/2me) k^2 / m_ratio.
double energy_from_wavenumber(double k_per_nm, double m_ratio);

/// Classical traversal time t_f = m d / (hbar k0), in fs.
double free_passage_time(double d_nm, double k0_per_nm, double m_ratio);

/// hbar/m in nm^2/fs for effective mass m = m_ratio * m_e.
double hbar_over_mass(double m_ratio);

}  // namespace qshutter::units
