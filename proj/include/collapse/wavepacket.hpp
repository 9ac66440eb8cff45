// wavepacket.hpp — Gaussian packet evolution of the main oscillator:
// sigma_Q^2(t), branch centers and Born weights from a Bloch spin state,
// total widths, and density evaluation on (q, t) grids with the Brownian
// convolution folded in as a width.
//
// The complex packet is carried by its Gaussian parameters (quadratic and
// linear coefficients plus a log-normalization), never by grid samples;
// grids exist only for output and for the finite-difference residual check
// in the verify module.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "collapse/bath.hpp"
#include "collapse/model.hpp"
#include "collapse/numerics.hpp"
#include "collapse/oscillator.hpp"

namespace collapse {

// ---------------------------------------------------------------------------
// Complex Gaussian packet psi(Q, t) = exp(quad Q^2 + lin Q + log_norm).
// ---------------------------------------------------------------------------
struct GaussianPacket {
    std::complex<double> quad{};
    std::complex<double> lin{};
    std::complex<double> log_norm{};

    std::complex<double> eval(double q_rel) const {
        return std::exp((quad * q_rel + lin) * q_rel + log_norm);
    }
};

namespace detail {

// Continuous argument of z(t) = a1 + i omega0 a2. The curve winds once
// counterclockwise around the origin per period of omega t, crossing the
// negative real axis exactly at odd multiples of pi, so the principal value
// needs 2 pi ceil((omega t - pi)/(2 pi)) added to stay continuous in t.
// Overdamped/critical z never leaves the right half plane (a1 > 0), so the
// principal value is already continuous there.
inline double unwrapped_arg(const ModelParams& p, double t, std::complex<double> z) {
    double arg = std::arg(z);
    if (p.omega_sq() > 0.0) {
        const double wt = std::sqrt(p.omega_sq()) * t;
        arg += 2.0 * num::pi * std::ceil((wt - num::pi) / (2.0 * num::pi));
    }
    return arg;
}

} // namespace detail

// Packet that starts at t = 0 as a ground-state-width Gaussian centered at
// q = 0 in the well coordinate Q = q - d_eff, evolved through the damped
// closed form. d_eff = +d and -d give the spin-up and spin-down branches;
// d_eff = 0 gives the field-free packet.
inline GaussianPacket packet(const ModelParams& p, double d_eff, double t) {
    const CoeffPair c = coeffs(p, t);
    const std::complex<double> i(0.0, 1.0);
    const double mw_hbar = p.mass * p.omega0 / p.hbar;

    const std::complex<double> z = c.a1 + i * p.omega0 * c.a2;
    const std::complex<double> chirp =
        (p.omega0 * c.a2 - i * c.a2dot) / (p.omega0 * c.a2 - i * c.a1);

    GaussianPacket g;
    g.quad = -0.5 * mw_hbar * chirp * std::exp(p.eta * t);
    g.lin = -mw_hbar * d_eff / z;
    const std::complex<double> log_z(std::log(std::abs(z)), detail::unwrapped_arg(p, t, z));
    g.log_norm = 0.25 * std::log(mw_hbar / num::pi) - 0.5 * log_z -
                 0.5 * mw_hbar * c.a1 * d_eff * d_eff / z;
    return g;
}

// ---------------------------------------------------------------------------
// Widths and weights
// ---------------------------------------------------------------------------

// Ground-state width of the undamped oscillator, sigma_q^2 = hbar/(2 M omega0).
inline double sigma_q_sq(const ModelParams& p) {
    p.validate();
    return 0.5 * p.hbar / (p.mass * p.omega0);
}

// Packet width ignoring the bath:
//   sigma_Q^2(t) = (hbar / 2 M omega0)(a1^2 + omega0^2 a2^2),
// equal to the damped-trig expansion
//   sigma_q^2 (1 + eta^2/4w^2 + (eta/2w) sin 2wt - (eta^2/4w^2) cos 2wt) e^{-eta t}.
inline double sigma_Q_sq(const ModelParams& p, double t) {
    p.require_underdamped("sigma_Q_sq");
    const CoeffPair c = coeffs(p, t);
    return sigma_q_sq(p) * (c.a1 * c.a1 + p.omega0 * p.omega0 * c.a2 * c.a2);
}

struct BornWeights {
    double p_plus = 1.0;
    double p_minus = 0.0;
};

// Born weights of the two branches. Time independent: fixed at t = 0+ by the
// initial spin state alone.
inline BornWeights probability_weights(const BlochVector& spin) {
    spin.validate();
    const double ch = std::cos(0.5 * spin.theta);
    const double sh = std::sin(0.5 * spin.theta);
    return {ch * ch, sh * sh};
}

// Gaussian packet descriptors at time t.
struct PacketState {
    double t = 0.0;
    double center_plus = 0.0;  // d - a1 d
    double center_minus = 0.0; // -d + a1 d
    double sigma_Q_sq = 0.0;
    double sigma_xi_sq = 0.0;
    double sigma_Qxi_sq = 0.0; // sigma_Q^2 + sigma_xi^2
    double weight_plus = 1.0;
    double weight_minus = 0.0;
};

inline PacketState packet_state(const ModelParams& p, const BlochVector& spin,
                                double sigma_xi_sq_value, double t) {
    if (!(sigma_xi_sq_value >= 0.0))
        throw ParameterError("packet_state: sigma_xi_sq must be >= 0");
    const double d = displacement(p);
    const CoeffPair c = coeffs(p, t);
    const BornWeights w = probability_weights(spin);
    PacketState s;
    s.t = t;
    s.center_plus = d - c.a1 * d;
    s.center_minus = -d + c.a1 * d;
    s.sigma_Q_sq = sigma_Q_sq(p, t);
    s.sigma_xi_sq = sigma_xi_sq_value;
    s.sigma_Qxi_sq = s.sigma_Q_sq + s.sigma_xi_sq;
    s.weight_plus = w.p_plus;
    s.weight_minus = w.p_minus;
    return s;
}

struct BranchDensity {
    double rho_plus = 0.0;  // 1/length
    double rho_minus = 0.0; // 1/length
};

namespace detail {

inline double gaussian_density(double x, double center, double variance) {
    const double d = x - center;
    return std::exp(-0.5 * d * d / variance) / std::sqrt(2.0 * num::pi * variance);
}

} // namespace detail

// |Psi_+|^2 and |Psi_-|^2 at (q, t):
//   rho_+ = cos^2(theta/2) N(q; d - a1 d, sigma_Qxi^2)
//   rho_- = sin^2(theta/2) N(q; -d + a1 d, sigma_Qxi^2)
// phi never enters. Both branches are always emitted, one identically zero
// at theta in {0, pi}, so output schemas stay uniform.
inline BranchDensity branch_densities(const ModelParams& p, const BlochVector& spin,
                                      double sigma_xi_sq_value, double q, double t) {
    if (!std::isfinite(q)) throw ParameterError("branch_densities: q must be finite");
    const PacketState s = packet_state(p, spin, sigma_xi_sq_value, t);
    if (!(s.sigma_Qxi_sq > 0.0))
        throw DegenerateWidthError("branch_densities: total width is zero; "
                                   "density would be a delta function");
    return {s.weight_plus * detail::gaussian_density(q, s.center_plus, s.sigma_Qxi_sq),
            s.weight_minus * detail::gaussian_density(q, s.center_minus, s.sigma_Qxi_sq)};
}

// ---------------------------------------------------------------------------
// Brownian-width source for grid evaluation: absent, a discretized bath
// summed at each t, or the t -> infinity closed form applied at every t.
// ---------------------------------------------------------------------------
struct BrownianSource {
    enum class Kind { none, discretized, asymptotic };

    Kind kind = Kind::none;
    BathDiscretization bath{};
    double temperature = 0.0; // kT, energy units

    static BrownianSource none() { return {}; }
    static BrownianSource discretized(BathDiscretization b, double kT = 0.0) {
        BrownianSource s;
        s.kind = Kind::discretized;
        s.bath = std::move(b);
        s.temperature = kT;
        return s;
    }
    static BrownianSource asymptotic() {
        BrownianSource s;
        s.kind = Kind::asymptotic;
        return s;
    }

    double sigma_xi_sq(const ModelParams& p, double t) const {
        switch (kind) {
            case Kind::none: return 0.0;
            case Kind::discretized: return sigma_xi_sq_sum(p, bath, t, temperature).sigma_xi_sq;
            case Kind::asymptotic: return sigma_xi_sq_asymptotic(p).sigma_xi_sq;
        }
        return 0.0;
    }
};

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------
struct GridSpec {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t points = 2;

    void validate(const char* what) const {
        if (points < 2 || !(hi > lo))
            throw ParameterError(std::string(what) + ": grid needs hi > lo and >= 2 points");
    }
    double step() const { return (hi - lo) / static_cast<double>(points - 1); }
    double value(std::size_t i) const { return lo + static_cast<double>(i) * step(); }
    std::vector<double> values() const {
        std::vector<double> v(points);
        for (std::size_t i = 0; i < points; ++i) v[i] = value(i);
        return v;
    }
};

// Sampled |Psi_+|^2, |Psi_-|^2, and their sum over (q, t). Row-major in t:
// cell (it, iq) lives at index it * q_axis.size() + iq.
struct DensityGrid {
    std::vector<double> q_axis;
    std::vector<double> t_axis;
    std::vector<double> rho_plus;
    std::vector<double> rho_minus;
    std::vector<double> rho_total;

    std::size_t index(std::size_t it, std::size_t iq) const { return it * q_axis.size() + iq; }

    double q_step() const { return q_axis.size() > 1 ? q_axis[1] - q_axis[0] : 0.0; }

    double mass_plus(std::size_t it) const { return column_mass(rho_plus, it); }
    double mass_minus(std::size_t it) const { return column_mass(rho_minus, it); }
    double mass_total(std::size_t it) const { return column_mass(rho_total, it); }

private:
    double column_mass(const std::vector<double>& rho, std::size_t it) const {
        return num::trapezoid(
            std::span<const double>(rho.data() + it * q_axis.size(), q_axis.size()), q_step());
    }
};

// Evaluates branch densities over the full grid. include_brownian = false
// forces sigma_xi^2 = 0; otherwise each t takes its width from the source.
// Rows are independent, so evaluation may be partitioned across threads with
// identical output.
inline DensityGrid density_grid(const ModelParams& p, const BlochVector& spin,
                                const BrownianSource& source, const GridSpec& q_spec,
                                std::span<const double> t_values, bool include_brownian,
                                unsigned threads = 1) {
    q_spec.validate("density_grid q");
    if (t_values.empty()) throw ParameterError("density_grid: empty t grid");

    DensityGrid grid;
    grid.q_axis = q_spec.values();
    grid.t_axis.assign(t_values.begin(), t_values.end());
    const std::size_t nq = grid.q_axis.size();
    const std::size_t nt = grid.t_axis.size();
    grid.rho_plus.resize(nq * nt);
    grid.rho_minus.resize(nq * nt);
    grid.rho_total.resize(nq * nt);

    num::parallel_for(nt, threads, [&](std::size_t it) {
        const double t = grid.t_axis[it];
        const double sx = include_brownian ? source.sigma_xi_sq(p, t) : 0.0;
        const PacketState s = packet_state(p, spin, sx, t);
        if (!(s.sigma_Qxi_sq > 0.0))
            throw DegenerateWidthError("density_grid: zero total width");
        for (std::size_t iq = 0; iq < nq; ++iq) {
            const double q = grid.q_axis[iq];
            const double rp =
                s.weight_plus * detail::gaussian_density(q, s.center_plus, s.sigma_Qxi_sq);
            const double rm =
                s.weight_minus * detail::gaussian_density(q, s.center_minus, s.sigma_Qxi_sq);
            const std::size_t k = grid.index(it, iq);
            grid.rho_plus[k] = rp;
            grid.rho_minus[k] = rm;
            grid.rho_total[k] = rp + rm;
        }
    });
    return grid;
}

inline DensityGrid density_grid(const ModelParams& p, const BlochVector& spin,
                                const BrownianSource& source, const GridSpec& q_spec,
                                const GridSpec& t_spec, bool include_brownian,
                                unsigned threads = 1) {
    t_spec.validate("density_grid t");
    const std::vector<double> ts = t_spec.values();
    return density_grid(p, spin, source, q_spec, ts, include_brownian, threads);
}

// ---------------------------------------------------------------------------
// Width curves
// ---------------------------------------------------------------------------
struct WidthTable {
    std::vector<double> t;
    std::vector<double> sigma_Q;
    std::vector<double> sigma_xi;
    std::vector<double> sigma_Qxi;
};

inline WidthTable width_curves(const ModelParams& p, const BrownianSource& source,
                               std::span<const double> t_values, unsigned threads = 1) {
    if (t_values.empty()) throw ParameterError("width_curves: empty t grid");
    WidthTable table;
    table.t.assign(t_values.begin(), t_values.end());
    const std::size_t nt = table.t.size();
    table.sigma_Q.resize(nt);
    table.sigma_xi.resize(nt);
    table.sigma_Qxi.resize(nt);
    num::parallel_for(nt, threads, [&](std::size_t i) {
        const double t = table.t[i];
        const double sq = sigma_Q_sq(p, t);
        const double sx = source.sigma_xi_sq(p, t);
        table.sigma_Q[i] = std::sqrt(sq);
        table.sigma_xi[i] = std::sqrt(sx);
        table.sigma_Qxi[i] = std::sqrt(sq + sx);
    });
    return table;
}

inline WidthTable width_curves(const ModelParams& p, const BrownianSource& source,
                               const GridSpec& t_spec, unsigned threads = 1) {
    t_spec.validate("width_curves t");
    const std::vector<double> ts = t_spec.values();
    return width_curves(p, source, ts, threads);
}

} // namespace collapse
