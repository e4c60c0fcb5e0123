// SPDX-License-Identifier: MIT
#include "qshutter/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "qshutter/errors.hpp"
#include "qshutter/quadrature.hpp"
#include "qshutter/units.hpp"

namespace qshutter::oracles {

namespace {
const Complex kI{0.0, 1.0};
}

Complex spectral_psi(double x, double t, const PacketParams& packet,
                     const BarrierParams& b, double abs_tol) {
    if (packet.cutoff_mode())
        throw DomainError("spectral_psi: requires delta > 0 (finite-norm state)");
    if (x < b.d) throw DomainError("spectral_psi: x must be >= d");
    if (t <= 0.0) throw DomainError("spectral_psi: t must be > 0");

    const double a = 0.5 * units::hbar_over_mass(b.m_ratio) * t;
    const double inv_sqrt2pi = 1.0 / std::sqrt(2.0 * M_PI);
    const auto f = [&](double k) -> Complex {
        if (k == 0.0) return 0.0;  // T(k) ~ k at the origin, removable
        const Complex phase = std::exp(kI * (k * x - a * k * k));
        return inv_sqrt2pi * phi_k(k, packet) *
               transmission_amplitude(Complex{k, 0.0}, b) * phase;
    };

    // |f| decays like 1/k^2 (the two Lorentzians nearly cancel) and the
    // phase derivative grows like 2ak, so the one-sided tail beyond K is
    // bounded by a few times |f(K)/theta'(K)| once K clears the
    // stationary point x/(2a).
    const double k0 = packet.k0;
    const double k_stat = x / (2.0 * a);
    double K = std::max({k0 + 400.0 * packet.delta, 4.0 * b.k_V, 2.0 * k_stat, 40.0});
    auto tail_bound = [&](double Kc) {
        const double tp = std::abs(x - 2.0 * a * Kc);
        const double tm = std::abs(x + 2.0 * a * Kc);
        return 3.0 * (std::abs(f(Kc)) / tp + std::abs(f(-Kc)) / tm);
    };
    while (tail_bound(K) > 0.25 * abs_tol && K < 1e6) K *= 1.4142135623730951;

    // break points: Lorentzian peaks, the barrier scale, and oscillation
    // chunks of bounded phase so the adaptive rule refines locally
    std::vector<double> breaks{-K, -b.k_V, -k0, 0.0, k0, b.k_V};
    for (double s : {-1.0, 1.0})
        for (double m : {1.0, 3.0, 10.0})
            breaks.push_back(s * k0 + s * m * packet.delta);
    double edge = std::max(b.k_V, k0 + 10.0 * packet.delta) * 1.5;
    while (edge < K) {
        breaks.push_back(edge);
        breaks.push_back(-edge);
        // next chunk spans roughly 300 rad of phase
        const double rate = std::abs(x) + 2.0 * a * edge;
        edge += std::max(300.0 / rate, 0.5);
    }
    breaks.push_back(K);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                                [&](double v) { return v < -K || v > K; }),
                 breaks.end());

    auto res = integrate_adaptive_segmented(f, breaks, 0.5 * abs_tol);
    const double total_bound = res.error_bound + tail_bound(K);
    if (!res.converged || total_bound > abs_tol)
        throw IntegrationError("spectral_psi quadrature did not converge", res.value,
                               total_bound);
    return res.value;
}

Complex m_quadrature(double x, Complex q, double t, double m_ratio, double abs_tol) {
    if (q.imag() == 0.0)
        throw DomainError("m_quadrature: needs Im q != 0 (pole off the contour)");
    if (t <= 0.0) throw DomainError("m_quadrature: t must be > 0");

    const double a = 0.5 * units::hbar_over_mass(m_ratio) * t;
    const double k_stat = x / (2.0 * a);
    const Complex dir = std::exp(Complex{0.0, -M_PI / 4.0});

    // Along k = k_stat + s*dir the Fresnel factor is exp(-a s^2) times a
    // constant, so the integrand is a Gaussian divided by the distance to
    // the pole.
    const Complex pref = (kI / (2.0 * M_PI)) * std::exp(kI * x * x / (4.0 * a)) * dir;
    const auto f = [&](double s) -> Complex {
        const Complex k = k_stat + s * dir;
        return pref * std::exp(-a * s * s) / (k - q);
    };

    const double S = std::sqrt(46.0 / a) + 1.0;  // exp(-46) ~ 1e-20
    const Complex delta = q - Complex{k_stat, 0.0};
    // projection of the pole onto the path and its distance from it
    const double s_near = (delta * std::conj(dir)).real();
    const double h_dist = std::abs((delta * std::conj(dir)).imag());
    std::vector<double> breaks{-S, 0.0, S};
    if (std::abs(s_near) < S) {
        for (double off : {-8.0, -2.0, 0.0, 2.0, 8.0}) {
            const double p = s_near + off * std::max(h_dist, 1e-6);
            if (p > -S && p < S) breaks.push_back(p);
        }
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    auto res = integrate_adaptive_segmented(f, breaks, 0.5 * abs_tol);
    if (!res.converged || res.error_bound > abs_tol)
        throw IntegrationError("m_quadrature did not converge", res.value,
                               res.error_bound);

    // Deforming the real axis onto the descent line sweeps the sectors
    // below it on the right of k_stat and above it on the left; a swept
    // pole contributes its residue exp(i q x - i a q^2).
    Complex val = res.value;
    if (delta.real() > 0.0 && -delta.real() < delta.imag() && delta.imag() < 0.0)
        val += std::exp(kI * q * x - kI * a * q * q);
    else if (delta.real() < 0.0 && 0.0 < delta.imag() && delta.imag() < -delta.real())
        val -= std::exp(kI * q * x - kI * a * q * q);
    return val;
}

GridConfig default_grid(const PacketParams& packet, const BarrierParams& b,
                        double x_obs, double t_max) {
    if (packet.cutoff_mode())
        throw DomainError("default_grid: requires delta > 0");
    const double four_pi_a = 4.0 * M_PI * packet.amplitude();
    // tail below 1e-12: 4 pi A exp(delta x_min) < 1e-12
    double x_min = -(std::log(four_pi_a) + 12.0 * std::log(10.0)) / packet.delta;
    x_min = std::floor(x_min / 10.0 - 1.0) * 10.0;
    // boundary sized so reflections of 99% of the momentum content stay out
    const double r = packet.delta / packet.k0;
    const double k_lim =
        packet.k0 + packet.delta * (1.0 + r * r) * 100.0 / (2.0 * M_PI);
    const double v_lim = units::hbar_over_mass(b.m_ratio) * k_lim;
    double x_max = std::max(150.0, 0.5 * (v_lim * t_max + x_obs) + 25.0);
    x_max = std::ceil(x_max / 10.0) * 10.0;
    const double dx = 0.05;
    const int n = static_cast<int>(std::lround((x_max - x_min) / dx)) + 1;
    return GridConfig{x_min, x_max, n, 0.01};
}

CrankNicolson1D::CrankNicolson1D(double x_min, double x_max, int n_points, double dt,
                                 double m_ratio, std::vector<double> potential,
                                 std::vector<Complex> psi0)
    : x_min_(x_min), dx_((x_max - x_min) / (n_points - 1)), dt_(dt),
      psi_(std::move(psi0)), work_(n_points) {
    if (n_points < 3) throw DomainError("CrankNicolson1D: need at least 3 points");
    if (potential.size() != std::size_t(n_points) || psi_.size() != std::size_t(n_points))
        throw DomainError("CrankNicolson1D: size mismatch");

    // (1 + i lam H) psi' = (1 - i lam H) psi,  lam = dt/(2 hbar); the
    // Cayley form is exactly unitary for Hermitian H.
    const double c2m = units::constants().hbar2_over_2me / m_ratio;
    const double lam = dt / (2.0 * units::constants().hbar);
    const double hop = -c2m / (dx_ * dx_);
    off_ = kI * lam * hop;
    rhs_off_ = -off_;
    diag_.resize(n_points);
    rhs_diag_.resize(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double hd = -2.0 * hop + potential[i];
        diag_[i] = 1.0 + kI * lam * hd;
        rhs_diag_[i] = 1.0 - kI * lam * hd;
    }
    // Thomas forward-elimination factors are constant in time
    cprime_.resize(n_points);
    Complex denom = diag_[0];
    cprime_[0] = off_ / denom;
    for (int i = 1; i < n_points; ++i) {
        denom = diag_[i] - off_ * cprime_[i - 1];
        diag_[i] = denom;  // store the eliminated diagonal
        if (i < n_points - 1) cprime_[i] = off_ / denom;
    }
}

void CrankNicolson1D::step(int n_steps) {
    const int n = static_cast<int>(psi_.size());
    for (int s = 0; s < n_steps; ++s) {
        // rhs = (1 - i lam H) psi with Dirichlet ends
        work_[0] = rhs_diag_[0] * psi_[0] + rhs_off_ * psi_[1];
        for (int i = 1; i < n - 1; ++i)
            work_[i] = rhs_diag_[i] * psi_[i] + rhs_off_ * (psi_[i - 1] + psi_[i + 1]);
        work_[n - 1] = rhs_diag_[n - 1] * psi_[n - 1] + rhs_off_ * psi_[n - 2];
        // Thomas solve with prefactored coefficients
        work_[0] /= diag_[0];
        for (int i = 1; i < n; ++i)
            work_[i] = (work_[i] - off_ * work_[i - 1]) / diag_[i];
        psi_[n - 1] = work_[n - 1];
        for (int i = n - 2; i >= 0; --i)
            psi_[i] = work_[i] - cprime_[i] * psi_[i + 1];
        time_ += dt_;
    }
}

double CrankNicolson1D::norm() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < psi_.size(); ++i) {
        const double w = (i == 0 || i + 1 == psi_.size()) ? 0.5 : 1.0;
        acc += w * std::norm(psi_[i]);
    }
    return acc * dx_;
}

double CrankNicolson1D::position_mean() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < psi_.size(); ++i)
        acc += x(static_cast<int>(i)) * std::norm(psi_[i]);
    return acc * dx_ / norm();
}

double CrankNicolson1D::position_stddev() const {
    const double mu = position_mean();
    double acc = 0.0;
    for (std::size_t i = 0; i < psi_.size(); ++i) {
        const double dxi = x(static_cast<int>(i)) - mu;
        acc += dxi * dxi * std::norm(psi_[i]);
    }
    return std::sqrt(acc * dx_ / norm());
}

CrankNicolsonRun crank_nicolson_density(double x_obs, const std::vector<double>& t_grid,
                                        const PacketParams& packet,
                                        const BarrierParams& b, const GridConfig& grid) {
    if (packet.cutoff_mode())
        throw DomainError("crank_nicolson_density: requires delta > 0");
    if (t_grid.empty()) throw DomainError("crank_nicolson_density: empty time grid");
    const double t_max = t_grid.back();

    // packet tail must vanish at the left wall
    const double tail = std::abs(initial_packet(grid.x_min, packet));
    if (tail >= 1e-12)
        throw BoxTooSmallError("initial packet tail at x_min is " + std::to_string(tail));
    // reflections of the fast momentum tail must not return to x_obs
    const double r = packet.delta / packet.k0;
    const double k_lim =
        packet.k0 + packet.delta * (1.0 + r * r) * 100.0 / (2.0 * M_PI);
    const double v_lim = units::hbar_over_mass(b.m_ratio) * k_lim;
    const double t_contam = std::min((2.0 * grid.x_max - x_obs) / v_lim,
                                     (2.0 * std::abs(grid.x_min) + x_obs) / v_lim);
    if (t_max > t_contam)
        throw BoxTooSmallError("boundary reflections reach x_obs at t = " +
                               std::to_string(t_contam) + " fs < t_max");

    const int n = grid.n_points;
    const double dx = (grid.x_max - grid.x_min) / (n - 1);
    std::vector<double> V(n);
    std::vector<Complex> psi0(n);
    for (int i = 0; i < n; ++i) {
        const double xi = grid.x_min + i * dx;
        V[i] = (xi >= 0.0 && xi <= b.d) ? b.V0 : 0.0;
        psi0[i] = initial_packet(xi, packet);
    }
    CrankNicolson1D cn(grid.x_min, grid.x_max, n, grid.dt, b.m_ratio, std::move(V),
                       std::move(psi0));

    CrankNicolsonRun run;
    run.norm_initial = cn.norm();
    const int io = static_cast<int>(std::lround((x_obs - grid.x_min) / dx));

    run.series.x = cn.x(io);
    run.series.mode = Mode::packet;
    run.series.t_f = units::free_passage_time(b.d, packet.k0, b.m_ratio);
    for (double target : t_grid) {
        const long want = std::lround(target / grid.dt);
        const long have = std::lround(cn.time() / grid.dt);
        if (want > have) cn.step(static_cast<int>(want - have));
        const Complex p = cn.state()[io];
        run.series.t_fs.push_back(cn.time());
        run.series.t_over_tf.push_back(cn.time() / run.series.t_f);
        run.series.psi.push_back(p);
        run.series.density.push_back(std::norm(p));
    }
    run.norm_final = cn.norm();
    return run;
}

}  // namespace qshutter::oracles
