// verify.hpp — independent numerical oracles that validate the closed forms:
// adaptive ODE integration for the coefficient functions, quadrature for the
// asymptotic width, a finite-difference residual of the effective
// Schroedinger equation, and eigenfunction orthonormality spot checks.
//
// Every comparison here is one-directional: closed forms must match these
// oracles, never the other way around. Nothing in this header calls the
// closed-form coefficient evaluations.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "collapse/model.hpp"
#include "collapse/numerics.hpp"
#include "collapse/oscillator.hpp"
#include "collapse/wavepacket.hpp"

namespace collapse {

// ---------------------------------------------------------------------------
// Driven damped-oscillator oracle: q'' + eta q' + omega0^2 q = f(t)
// ---------------------------------------------------------------------------
enum class ForcingKind { none, unit_constant, cosine, sine_over_omega };

struct ForcingSpec {
    ForcingKind kind = ForcingKind::none;
    double amplitude = 0.0;
    double omega = 0.0; // drive frequency for the oscillatory kinds

    double operator()(double t) const {
        switch (kind) {
            case ForcingKind::none: return 0.0;
            case ForcingKind::unit_constant: return amplitude;
            case ForcingKind::cosine: return amplitude * std::cos(omega * t);
            case ForcingKind::sine_over_omega: return amplitude * std::sin(omega * t) / omega;
        }
        return 0.0;
    }

    void validate() const {
        if ((kind == ForcingKind::cosine || kind == ForcingKind::sine_over_omega) &&
            !(omega > 0.0))
            throw ParameterError("ForcingSpec: oscillatory forcing needs omega > 0");
    }
};

struct Trajectory {
    std::vector<double> t;
    std::vector<double> q;
    std::vector<double> qdot;
};

namespace detail {

struct State2 {
    double q, v;
};

// One Dormand-Prince 5(4) step; returns the 5th-order update and the
// embedded error estimate.
template <typename Rhs>
inline void dopri5_step(const Rhs& rhs, double t, const State2& y, double h, State2& out,
                        State2& err) {
    constexpr double a21 = 1.0 / 5.0;
    constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                     a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                     a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                     b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    constexpr double e1 = 35.0 / 384.0 - 5179.0 / 57600.0, e3 = 500.0 / 1113.0 - 7571.0 / 16695.0,
                     e4 = 125.0 / 192.0 - 393.0 / 640.0,
                     e5 = -2187.0 / 6784.0 + 92097.0 / 339200.0, e6 = 11.0 / 84.0 - 187.0 / 2100.0,
                     e7 = -1.0 / 40.0;
    constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

    const State2 k1 = rhs(t, y);
    const State2 k2 = rhs(t + c2 * h, {y.q + h * a21 * k1.q, y.v + h * a21 * k1.v});
    const State2 k3 = rhs(t + c3 * h, {y.q + h * (a31 * k1.q + a32 * k2.q),
                                       y.v + h * (a31 * k1.v + a32 * k2.v)});
    const State2 k4 = rhs(t + c4 * h, {y.q + h * (a41 * k1.q + a42 * k2.q + a43 * k3.q),
                                       y.v + h * (a41 * k1.v + a42 * k2.v + a43 * k3.v)});
    const State2 k5 =
        rhs(t + c5 * h, {y.q + h * (a51 * k1.q + a52 * k2.q + a53 * k3.q + a54 * k4.q),
                         y.v + h * (a51 * k1.v + a52 * k2.v + a53 * k3.v + a54 * k4.v)});
    const State2 k6 = rhs(
        t + h, {y.q + h * (a61 * k1.q + a62 * k2.q + a63 * k3.q + a64 * k4.q + a65 * k5.q),
                y.v + h * (a61 * k1.v + a62 * k2.v + a63 * k3.v + a64 * k4.v + a65 * k5.v)});

    out.q = y.q + h * (b1 * k1.q + b3 * k3.q + b4 * k4.q + b5 * k5.q + b6 * k6.q);
    out.v = y.v + h * (b1 * k1.v + b3 * k3.v + b4 * k4.v + b5 * k5.v + b6 * k6.v);
    const State2 k7 = rhs(t + h, out);
    err.q = h * (e1 * k1.q + e3 * k3.q + e4 * k4.q + e5 * k5.q + e6 * k6.q + e7 * k7.q);
    err.v = h * (e1 * k1.v + e3 * k3.v + e4 * k4.v + e5 * k5.v + e6 * k6.v + e7 * k7.v);
}

inline double error_norm(const State2& err, const State2& y0, const State2& y1, double tol) {
    const double sq = tol + tol * std::max(std::abs(y0.q), std::abs(y1.q));
    const double sv = tol + tol * std::max(std::abs(y0.v), std::abs(y1.v));
    const double eq = err.q / sq;
    const double ev = err.v / sv;
    return std::sqrt(0.5 * (eq * eq + ev * ev));
}

} // namespace detail

// Integrates the driven damped oscillator through the requested grid times.
// Two passes per segment: an adaptive pass brackets the step size, then a
// fixed-step pass no coarser than the smallest accepted step produces the
// reported values, so identical inputs give bit-identical trajectories.
// Throws OracleFailureError instead of degrading when the tolerance cannot
// be met.
inline Trajectory ode_oracle(const ModelParams& p, const ForcingSpec& forcing,
                             std::span<const double> t_grid, double q0 = 0.0,
                             double qdot0 = 0.0, double tol = 1e-12) {
    p.validate();
    forcing.validate();
    if (t_grid.empty()) throw ParameterError("ode_oracle: empty time grid");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] >= 0.0)) throw ParameterError("ode_oracle: grid times must be >= 0");
        if (i > 0 && !(t_grid[i] >= t_grid[i - 1]))
            throw ParameterError("ode_oracle: grid times must be nondecreasing");
    }

    const double w0sq = p.omega0 * p.omega0;
    const auto rhs = [&](double t, const detail::State2& y) -> detail::State2 {
        return {y.v, forcing(t) - p.eta * y.v - w0sq * y.q};
    };

    Trajectory traj;
    traj.t.assign(t_grid.begin(), t_grid.end());
    traj.q.resize(t_grid.size());
    traj.qdot.resize(t_grid.size());

    detail::State2 y{q0, qdot0};
    double t_now = 0.0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double t_end = t_grid[i];
        if (t_end > t_now) {
            const double span = t_end - t_now;
            const double h_floor = 1e-13 * std::max(1.0, t_end);

            // pass 1: adaptive bracketing
            double h = span;
            double h_min_accepted = span;
            detail::State2 ya = y;
            double ta = t_now;
            while (ta < t_end) {
                h = std::min(h, t_end - ta);
                detail::State2 ynext, err;
                detail::dopri5_step(rhs, ta, ya, h, ynext, err);
                const double en = detail::error_norm(err, ya, ynext, tol);
                if (en <= 1.0) {
                    ta += h;
                    ya = ynext;
                    h_min_accepted = std::min(h_min_accepted, h);
                }
                const double factor =
                    en > 0.0 ? std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0) : 5.0;
                h *= factor;
                if (h < h_floor)
                    throw OracleFailureError("ode_oracle: step size underflow while bracketing");
            }

            // pass 2: fixed step, never coarser than the bracketing pass
            const double n_est = std::ceil(span / h_min_accepted);
            if (!(n_est < 2e7))
                throw OracleFailureError("ode_oracle: fixed-step pass would need too many steps");
            const std::size_t n = static_cast<std::size_t>(std::max(1.0, n_est));
            const double hf = span / static_cast<double>(n);
            for (std::size_t k = 0; k < n; ++k) {
                const double tk = t_now + static_cast<double>(k) * hf;
                detail::State2 ynext, err;
                detail::dopri5_step(rhs, tk, y, hf, ynext, err);
                if (detail::error_norm(err, y, ynext, tol) > 10.0)
                    throw OracleFailureError("ode_oracle: fixed-step pass exceeded tolerance");
                y = ynext;
            }
            t_now = t_end;
        }
        traj.q[i] = y.q;
        traj.qdot[i] = y.v;
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Quadrature oracle for the asymptotic Brownian width:
//   (eta hbar / 2 pi M) Int_0^inf d(w_j^2) / ((omega0^2 - w_j^2)^2 + eta^2 w_j^2).
// Integrated in u = w_j^2, split at u = U with the tail mapped by w = 1/u,
// which turns it into the smooth integrand 1/((omega0^2 w - 1)^2 + eta^2 w)
// on [0, 1/U]. No closed-form arctan appears anywhere in this path.
// ---------------------------------------------------------------------------
inline double brownian_width_quadrature(const ModelParams& p, double tol = 1e-12) {
    p.validate();
    if (!(p.eta > 0.0))
        throw ParameterError("brownian_width_quadrature: eta must be > 0");
    const double w0sq = p.omega0 * p.omega0;
    const double eta2 = p.eta * p.eta;
    const double u_split = 25.0 * w0sq;
    const auto head = [&](double u) {
        const double d = w0sq - u;
        return 1.0 / (d * d + eta2 * u);
    };
    const auto tail = [&](double w) {
        const double d = w0sq * w - 1.0;
        return 1.0 / (d * d + eta2 * w);
    };
    const double scale = num::pi / (p.eta * p.omega0 * w0sq); // ~ magnitude of the integral
    const double integral = num::adaptive_simpson(head, 0.0, u_split, tol * scale) +
                            num::adaptive_simpson(tail, 0.0, 1.0 / u_split, tol * scale);
    return p.eta * p.hbar / (2.0 * num::pi * p.mass) * integral;
}

// ---------------------------------------------------------------------------
// Finite-difference residual of i hbar d_t psi = H_Q psi with
// H_Q = e^{-eta t} P^2/2M + (1/2) M e^{eta t} omega0^2 Q^2
// applied to the closed-form packet. Centered second differences in Q,
// centered first difference in t; the L2 norms are taken relative to the
// discrete H psi norm, so the report is dimensionless.
// ---------------------------------------------------------------------------
struct ResidualReport {
    double grid_h = 0.0;
    double grid_dt = 0.0;
    double residual_l2 = 0.0;    // at (grid_h, grid_dt)
    double order_estimate = 0.0; // from one (h, dt) -> (h/2, dt/2) refinement
    bool too_coarse = false;     // residual > 0.1 at the coarse level
};

struct ResidualWindow {
    double q_lo = -4.0;
    double q_hi = 4.0;
    std::size_t q_points = 801;
    double t_lo = 0.5;
    double t_hi = 1.5;
    std::size_t t_samples = 21;
};

namespace detail {

inline double residual_rms(const ModelParams& p, double d_eff, const ResidualWindow& win,
                           std::size_t q_points, double fd_dt) {
    const double h = (win.q_hi - win.q_lo) / static_cast<double>(q_points - 1);
    const std::complex<double> ih(0.0, p.hbar);
    num::CompensatedSum res_sq, rhs_sq;

    std::vector<std::complex<double>> row0(q_points), row_m(q_points), row_p(q_points);
    for (std::size_t s = 0; s < win.t_samples; ++s) {
        const double t =
            win.t_lo + (win.t_hi - win.t_lo) * static_cast<double>(s) /
                           static_cast<double>(std::max<std::size_t>(1, win.t_samples - 1));
        const GaussianPacket g0 = packet(p, d_eff, t);
        const GaussianPacket gm = packet(p, d_eff, t - fd_dt);
        const GaussianPacket gp = packet(p, d_eff, t + fd_dt);
        for (std::size_t iq = 0; iq < q_points; ++iq) {
            const double q = win.q_lo + static_cast<double>(iq) * h;
            row0[iq] = g0.eval(q);
            row_m[iq] = gm.eval(q);
            row_p[iq] = gp.eval(q);
        }
        const double kin = -std::exp(-p.eta * t) * p.hbar * p.hbar / (2.0 * p.mass * h * h);
        const double pot = 0.5 * p.mass * std::exp(p.eta * t) * p.omega0 * p.omega0;
        for (std::size_t iq = 1; iq + 1 < q_points; ++iq) {
            const double q = win.q_lo + static_cast<double>(iq) * h;
            const std::complex<double> dpsi_dt = (row_p[iq] - row_m[iq]) / (2.0 * fd_dt);
            const std::complex<double> lap = row0[iq + 1] - 2.0 * row0[iq] + row0[iq - 1];
            const std::complex<double> h_psi = kin * lap + pot * q * q * row0[iq];
            const std::complex<double> r = ih * dpsi_dt - h_psi;
            res_sq.add(std::norm(r));
            rhs_sq.add(std::norm(h_psi));
        }
    }
    if (!(rhs_sq.value() > 0.0))
        throw OracleFailureError("schrodinger_residual: vanishing H psi norm");
    return std::sqrt(res_sq.value() / rhs_sq.value());
}

} // namespace detail

// d_eff = 0 checks the field-free packet; d_eff = +-d checks a branch packet.
inline ResidualReport schrodinger_residual(const ModelParams& p, double d_eff,
                                           const ResidualWindow& win, double fd_dt) {
    p.validate();
    if (win.q_points < 3 || win.t_samples < 1 || !(win.q_hi > win.q_lo))
        throw ParameterError("schrodinger_residual: bad window");
    if (!(fd_dt > 0.0) || !(win.t_lo - fd_dt >= 0.0))
        throw ParameterError("schrodinger_residual: fd_dt must be > 0 and t_lo - fd_dt >= 0");

    ResidualReport rep;
    rep.grid_h = (win.q_hi - win.q_lo) / static_cast<double>(win.q_points - 1);
    rep.grid_dt = fd_dt;
    rep.residual_l2 = detail::residual_rms(p, d_eff, win, win.q_points, fd_dt);
    const double fine =
        detail::residual_rms(p, d_eff, win, 2 * (win.q_points - 1) + 1, 0.5 * fd_dt);
    rep.order_estimate = std::log2(rep.residual_l2 / fine);
    rep.too_coarse = rep.residual_l2 > 0.1;
    return rep;
}

// ---------------------------------------------------------------------------
// Orthonormality spot check of the Q(t) eigenfunctions
//   u_{Q1}(Q0, t) = C exp[-i (M / 2 hbar a2)(a1 Q0^2 - 2 Q1 Q0)],
// |C|^2 = M/(2 pi hbar |a2|). Plane-wave-like states need a smooth window;
// a Hann taper over [-L, L] is used, whose exact window integral is L.
// ---------------------------------------------------------------------------
struct OrthonormalityReport {
    double t = 0.0;
    double window_half_width = 0.0;
    double diag_rel_err = 0.0;       // worst |diag - analytic| / analytic
    double max_offdiag_ratio = 0.0;  // worst |offdiag| / analytic diagonal
};

inline OrthonormalityReport eigenfunction_orthonormality(const ModelParams& p, double t,
                                                         std::span<const double> q1_list,
                                                         double window_half_width,
                                                         std::size_t q0_points = 4001) {
    p.validate();
    if (q1_list.size() < 2) throw ParameterError("eigenfunction_orthonormality: need >= 2 Q1");
    if (!(window_half_width > 0.0) || q0_points < 16)
        throw ParameterError("eigenfunction_orthonormality: bad window");

    const CoeffPair c = coeffs(p, t);
    if (std::abs(c.a2) * p.omega0 < 1e-9)
        throw SingularEigenbasisError(
            "eigenfunction_orthonormality: a2(t) ~ 0, eigenbasis is singular "
            "(t near a multiple of pi/omega)");

    const double L = window_half_width;
    const double norm_sq = p.mass / (2.0 * num::pi * p.hbar * std::abs(c.a2));
    const double phase_scale = 0.5 * p.mass / (p.hbar * c.a2);
    const double h = 2.0 * L / static_cast<double>(q0_points - 1);

    const auto u = [&](double q1, double q0) {
        const double phase = -phase_scale * (c.a1 * q0 * q0 - 2.0 * q1 * q0);
        return std::sqrt(norm_sq) * std::exp(std::complex<double>(0.0, phase));
    };

    const double diag_analytic = norm_sq * L; // integral of the Hann taper is L
    OrthonormalityReport rep;
    rep.t = t;
    rep.window_half_width = L;

    for (std::size_t i = 0; i < q1_list.size(); ++i) {
        for (std::size_t j = i; j < q1_list.size(); ++j) {
            std::complex<double> acc = 0.0;
            for (std::size_t k = 0; k < q0_points; ++k) {
                const double q0 = -L + static_cast<double>(k) * h;
                const double cw = std::cos(0.5 * num::pi * q0 / L);
                const double w = cw * cw;
                const double edge = (k == 0 || k + 1 == q0_points) ? 0.5 : 1.0;
                acc += edge * w * std::conj(u(q1_list[j], q0)) * u(q1_list[i], q0);
            }
            acc *= h;
            if (i == j)
                rep.diag_rel_err = std::max(
                    rep.diag_rel_err, std::abs(std::abs(acc) - diag_analytic) / diag_analytic);
            else
                rep.max_offdiag_ratio =
                    std::max(rep.max_offdiag_ratio, std::abs(acc) / diag_analytic);
        }
    }
    return rep;
}

} // namespace collapse
