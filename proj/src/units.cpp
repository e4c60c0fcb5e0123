// SPDX-License-Identifier: MIT
#include "qshutter/units.hpp"

#include <cmath>

#include "qshutter/errors.hpp"

namespace qshutter::units {

const PhysicalConstants& constants() noexcept {
    static const PhysicalConstants c{0.6582119569, 0.0380998};
    return c;
}

double wavenumber_from_energy(double energy_ev, double m_ratio) {
    if (energy_ev < 0.0)
        throw DomainError("wavenumber_from_energy: energy must be >= 0");
    if (m_ratio <= 0.0)
        throw DomainError("wavenumber_from_energy: mass ratio must be > 0");
    return std::sqrt(energy_ev * m_ratio / constants().hbar2_over_2me);
}

double energy_from_wavenumber(double k_per_nm, double m_ratio) {
    if (m_ratio <= 0.0)
        throw DomainError("energy_from_wavenumber: mass ratio must be > 0");
    return constants().hbar2_over_2me * k_per_nm * k_per_nm / m_ratio;
}

double free_passage_time(double d_nm, double k0_per_nm, double m_ratio) {
    if (d_nm <= 0.0)
        throw DomainError("free_passage_time: barrier width must be > 0");
    if (k0_per_nm <= 0.0)
        throw DomainError("free_passage_time: wave number must be > 0");
    const auto& c = constants();
    return d_nm * m_ratio * c.hbar / (2.0 * c.hbar2_over_2me * k0_per_nm);
}

double hbar_over_mass(double m_ratio) {
    if (m_ratio <= 0.0)
        throw DomainError("hbar_over_mass: mass ratio must be > 0");
    const auto& c = constants();
    return 2.0 * c.hbar2_over_2me / (c.hbar * m_ratio);
}

}  // namespace qshutter::units
