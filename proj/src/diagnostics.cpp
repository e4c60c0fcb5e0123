// SPDX-License-Identifier: MIT
#include "qshutter/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "qshutter/errors.hpp"
#include "qshutter/quadrature.hpp"
#include "qshutter/units.hpp"

namespace qshutter {

double ShutterProblem::t_f() const {
    return units::free_passage_time(barrier.d, packet.k0, barrier.m_ratio);
}

Complex ShutterProblem::psi(double x, double t) const {
    const EvaluationPoint pt{x, t};
    return mode() == Mode::cutoff ? psi_cutoff(pt, barrier, packet.k0, *table)
                                  : psi_packet(pt, barrier, packet, *table);
}

ValueAndTimeDerivative ShutterProblem::psi_with_dt(double x, double t) const {
    const EvaluationPoint pt{x, t};
    return mode() == Mode::cutoff
               ? psi_cutoff_with_dt(pt, barrier, packet.k0, *table)
               : psi_packet_with_dt(pt, barrier, packet, *table);
}

std::vector<double> uniform_grid(double t_min, double t_max, int steps) {
    if (steps < 2) throw DomainError("uniform_grid: steps must be >= 2");
    if (!(t_min > 0.0) || !(t_max > t_min))
        throw DomainError("uniform_grid: need 0 < t_min < t_max");
    std::vector<double> grid(steps);
    for (int i = 0; i < steps; ++i)
        grid[i] = t_min + (t_max - t_min) * double(i) / double(steps - 1);
    return grid;
}

DensityTimeSeries density_series(const ShutterProblem& prob, double x,
                                 const std::vector<double>& t_grid) {
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
        if (!(t_grid[i] < t_grid[i + 1]))
            throw DomainError("density_series: time grid must be strictly increasing");
    if (!t_grid.empty() && !(t_grid.front() > 0.0))
        throw DomainError("density_series: grid must lie in t > 0");

    DensityTimeSeries out;
    out.x = x;
    out.mode = prob.mode();
    out.t_f = prob.t_f();
    out.t_fs = t_grid;
    out.t_over_tf.reserve(t_grid.size());
    out.psi.reserve(t_grid.size());
    out.density.reserve(t_grid.size());
    for (double t : t_grid) {
        const Complex p = prob.psi(x, t);
        out.t_over_tf.push_back(t / out.t_f);
        out.psi.push_back(p);
        out.density.push_back(std::norm(p));
    }
    return out;
}

ResonancePeak find_peak(const ShutterProblem& prob, double x) {
    const double tf = prob.t_f();
    return find_peak(prob, x, 0.01 * tf, 5.0 * tf, 2000);
}

ResonancePeak find_peak(const ShutterProblem& prob, double x, double t_min,
                        double t_max, int coarse_steps) {
    const double tf = prob.t_f();
    const auto grid = uniform_grid(t_min, t_max, coarse_steps);
    double best = -1.0;
    std::size_t ibest = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double dens = std::norm(prob.psi(x, grid[i]));
        if (dens > best) {
            best = dens;
            ibest = i;
        }
    }
    if (ibest == 0 || ibest + 1 == grid.size())
        throw NoInteriorPeakError("find_peak: coarse maximum sits on the grid boundary");

    // golden-section maximization on the bracket around the coarse maximum
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = grid[ibest - 1];
    double b = grid[ibest + 1];
    double c = b - invphi * (b - a);
    double dd = a + invphi * (b - a);
    double fc = std::norm(prob.psi(x, c));
    double fd = std::norm(prob.psi(x, dd));
    const double width_target = 1e-4 * tf;
    while (b - a > width_target) {
        if (fc > fd) {
            b = dd;
            dd = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = std::norm(prob.psi(x, c));
        } else {
            a = c;
            c = dd;
            fc = fd;
            dd = a + invphi * (b - a);
            fd = std::norm(prob.psi(x, dd));
        }
    }
    const double t_p = 0.5 * (a + b);
    return ResonancePeak{t_p, t_p / tf, std::norm(prob.psi(x, t_p)), b - a};
}

TransmissionSplit transmission_split(const PacketParams& packet, const BarrierParams& b) {
    if (packet.cutoff_mode())
        throw DomainError("transmission_split: requires delta > 0");
    const auto integrand = [&](double k) -> Complex {
        if (k == 0.0) return 0.0;  // |T|^2 -> 0 like k^2 at the origin
        const double a = std::abs(transmission_amplitude(Complex{k, 0.0}, b));
        const double p = std::abs(phi_k(k, packet));
        return Complex{a * a * p * p, 0.0};
    };

    const double tol = 1e-12;
    auto under = integrate_adaptive_segmented(
        integrand, {0.0, std::min(packet.k0, b.k_V), b.k_V}, tol);
    if (!under.converged)
        throw IntegrationError("transmission_split: P_under quadrature", under.value,
                               under.error_bound);
    const double p_under = under.value.real();

    // march K outward until the rigorous Lorentzian tail bound (|T| <= 1,
    // |phi|^2 <= 2*2piA^2 [L(k-k0) + L(k+k0)]) is negligible
    const double A = packet.amplitude();
    const double c = 4.0 * M_PI * A * A;
    auto tail_bound = [&](double K) {
        const double i1 =
            (M_PI / 2.0 - std::atan((K - packet.k0) / packet.delta)) / packet.delta;
        const double i2 =
            (M_PI / 2.0 - std::atan((K + packet.k0) / packet.delta)) / packet.delta;
        return c * (i1 + i2);
    };
    double K = b.k_V + packet.k0 + 10.0 * packet.delta;
    double p_over = 0.0;
    double prev = b.k_V;
    for (int iter = 0; iter < 60; ++iter) {
        auto seg = integrate_adaptive(integrand, prev, K, tol);
        if (!seg.converged)
            throw IntegrationError("transmission_split: P_over quadrature", seg.value,
                                   seg.error_bound);
        p_over += seg.value.real();
        if (tail_bound(K) < 1e-6 * p_over) break;
        prev = K;
        K *= 2.0;
    }
    return TransmissionSplit{p_under, p_over};
}

namespace {

double psi_log_ratio_guard(const Complex& psi) {
    const double mag = std::abs(psi);
    if (!(mag > 1e-300))
        throw UndefinedFrequencyError("local frequency undefined: |Psi| underflowed");
    return mag;
}

}  // namespace

double local_frequency(const ShutterProblem& prob, double x, double t) {
    const auto v = prob.psi_with_dt(x, t);
    psi_log_ratio_guard(v.value);
    return -std::imag(v.dt / v.value);
}

double bandwidth(const ShutterProblem& prob, double x, double t) {
    const auto v = prob.psi_with_dt(x, t);
    psi_log_ratio_guard(v.value);
    return std::abs(std::real(v.dt / v.value));
}

double mean_energy(const PacketParams& packet, double m_ratio) {
    const double e0 = units::energy_from_wavenumber(packet.k0, m_ratio);
    const double r = packet.delta / packet.k0;
    return (1.0 + r * r) * e0;
}

}  // namespace qshutter
