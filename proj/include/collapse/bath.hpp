// bath.hpp — Ohmic bath construction, per-oscillator response coefficients
// b_j1(t), b_j2(t), and the Brownian width sigma_xi^2(t) by brute-force sum,
// asymptotic closed form, and thermal (coth) correction.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "collapse/model.hpp"
#include "collapse/numerics.hpp"
#include "collapse/oscillator.hpp"

namespace collapse {

struct BathOscillator {
    double mass = 1.0;     // m_j
    double omega = 1.0;    // omega_j, rad/time
    double coupling = 0.0; // c_j, units M*omega^2 (per unit length of q)

    void validate() const {
        if (!(mass > 0.0) || !std::isfinite(mass))
            throw ParameterError("BathOscillator: mass must be positive and finite");
        if (!(omega > 0.0) || !std::isfinite(omega))
            throw ParameterError("BathOscillator: omega must be positive and finite");
        if (!(coupling >= 0.0) || !std::isfinite(coupling))
            throw ParameterError("BathOscillator: coupling must be nonnegative and finite");
    }
};

enum class BathScheme { uniform_frequency };

struct BathDiscretization {
    std::vector<BathOscillator> oscillators; // frequencies strictly increasing
    double omega_cutoff = 0.0;
    BathScheme scheme = BathScheme::uniform_frequency;
    bool low_cutoff = false; // set when omega_cutoff < 10 omega0 at build time

    double delta_omega() const {
        return omega_cutoff / static_cast<double>(oscillators.size());
    }
};

// Builds n oscillators on the midpoint grid omega_j = (j - 1/2) d_omega,
// d_omega = cutoff/n, with unit masses and couplings fixed by the Ohmic
// constraint c_j^2 = (2 eta M / pi) m_j omega_j^2 d_omega. The midpoint
// offset keeps hbar/(m_j omega_j) finite for every mode. Frequency
// renormalization is taken as exact: after it the oscillator frequency is
// omega0, so no shift constant appears anywhere downstream.
inline BathDiscretization build_ohmic_bath(const ModelParams& p, std::size_t n,
                                           double omega_cutoff) {
    p.validate();
    if (n < 2) throw ParameterError("build_ohmic_bath: need at least 2 oscillators");
    if (!(omega_cutoff > 0.0) || !std::isfinite(omega_cutoff))
        throw ParameterError("build_ohmic_bath: omega_cutoff must be positive and finite");

    BathDiscretization bath;
    bath.omega_cutoff = omega_cutoff;
    bath.low_cutoff = omega_cutoff < 10.0 * p.omega0;
    bath.oscillators.resize(n);
    const double d_omega = omega_cutoff / static_cast<double>(n);
    const double ohmic = 2.0 * p.eta * p.mass * d_omega / num::pi; // c_j^2 / (m_j omega_j^2)
    for (std::size_t j = 0; j < n; ++j) {
        auto& osc = bath.oscillators[j];
        osc.mass = 1.0;
        osc.omega = (static_cast<double>(j) + 0.5) * d_omega;
        osc.coupling = osc.omega * std::sqrt(ohmic * osc.mass);
        osc.validate();
    }
    return bath;
}

// Response of q to the j'th bath oscillator's initial values:
//   q(t) ⊃ x_j0 b1(t) + xdot_j0 b2(t).
// b1 is dimensionless, b2 has units of time; all four vanish at t = 0.
struct BathCoeffs {
    double b1 = 0.0;
    double b2 = 0.0;
    double b1dot = 0.0;
    double b2dot = 0.0;
};

// Closed forms with mu = eta/2 + i omega, nu = eta/2 - i omega combined into
// explicitly real expressions; the denominators collapse to
//   D = (mu^2 + w_j^2)(nu^2 + w_j^2) = (omega0^2 - w_j^2)^2 + eta^2 w_j^2,
// so the same code covers real and imaginary omega.
inline BathCoeffs bath_coeffs(const ModelParams& p, const BathOscillator& osc, double t) {
    p.validate();
    osc.validate();
    if (!(t >= 0.0) || !std::isfinite(t))
        throw ParameterError("bath_coeffs: t must be >= 0");

    if (t == 0.0) return {}; // all four vanish identically at t = 0

    const double w02 = p.omega0 * p.omega0;
    const double wj = osc.omega;
    const double wj2 = wj * wj;
    const double eta = p.eta;
    const double det = (w02 - wj2) * (w02 - wj2) + eta * eta * wj2;
    const double pref = -osc.coupling / (p.mass * det);

    const double cj = std::cos(wj * t);
    const double sj = std::sin(wj * t);
    const double w2 = p.omega_sq();
    const auto [dc, ds] = num::damped_trig(w2, eta, t); // e^{-eta t/2} {C, S}
    const double ddc = -0.5 * eta * dc - w2 * ds;       // d/dt dc
    const double dds = -0.5 * eta * ds + dc;            // d/dt ds

    BathCoeffs b;
    b.b1 = pref * (eta * wj * sj + (w02 - wj2) * cj
                   + (wj2 - w02) * dc - 0.5 * eta * (wj2 + w02) * ds);
    b.b2 = pref * ((w02 - wj2) * sj / wj - eta * cj
                   + (wj2 - w02 + 0.5 * eta * eta) * ds + eta * dc);
    b.b1dot = pref * (eta * wj2 * cj - wj * (w02 - wj2) * sj
                      + (wj2 - w02) * ddc - 0.5 * eta * (wj2 + w02) * dds);
    b.b2dot = pref * ((w02 - wj2) * cj + eta * wj * sj
                      + (wj2 - w02 + 0.5 * eta * eta) * dds + eta * ddc);
    return b;
}

enum class WidthMethod { sum, asymptotic_closed_form, thermal_sum };

struct BrownianWidth {
    double sigma_xi_sq = 0.0; // length^2
    WidthMethod method = WidthMethod::sum;
    double t = 0.0; // +inf for the asymptotic form
};

// Brute-force Brownian width at time t:
//   sigma_xi^2(t) = sum_j (hbar / 2 m_j w_j)(b1^2 + w_j^2 b2^2) coth(hbar w_j / 2 kT)
// with the coth factor identically 1 at kT = 0. Terms near resonance span
// many orders of magnitude; the sum is accumulated in compensated arithmetic.
inline BrownianWidth sigma_xi_sq_sum(const ModelParams& p, const BathDiscretization& bath,
                                     double t, double temperature = 0.0) {
    p.validate();
    if (!(t >= 0.0) || !std::isfinite(t))
        throw ParameterError("sigma_xi_sq_sum: t must be >= 0");
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw ParameterError("sigma_xi_sq_sum: temperature (kT) must be >= 0");

    num::CompensatedSum acc;
    for (const auto& osc : bath.oscillators) {
        const BathCoeffs b = bath_coeffs(p, osc, t);
        double term = 0.5 * (b.b1 * b.b1 + osc.omega * osc.omega * b.b2 * b.b2) *
                      p.hbar / (osc.mass * osc.omega);
        if (temperature > 0.0)
            term *= num::coth(p.hbar * osc.omega / (2.0 * temperature));
        acc.add(term);
    }
    return {acc.value(),
            temperature > 0.0 ? WidthMethod::thermal_sum : WidthMethod::sum, t};
}

// t -> infinity closed form of the Brownian width (zero temperature,
// continuum bath):
//   sigma_xi^2 = (hbar / 2 pi omega M)(pi/2 + arctan((omega^2 - eta^2/4)/(eta omega)))
// Derived for real omega only; overdamped parameters are rejected. At eta = 0
// the arctan saturates and the value is the ground-state width hbar/(2 omega M).
inline BrownianWidth sigma_xi_sq_asymptotic(const ModelParams& p) {
    p.validate();
    p.require_underdamped("sigma_xi_sq_asymptotic");
    const double w = p.omega();
    double value;
    if (p.eta == 0.0) {
        value = 0.5 * p.hbar / (w * p.mass);
    } else {
        const double arg = (w * w - 0.25 * p.eta * p.eta) / (p.eta * w);
        value = p.hbar / (2.0 * num::pi * w * p.mass) * (0.5 * num::pi + std::atan(arg));
    }
    return {value, WidthMethod::asymptotic_closed_form,
            std::numeric_limits<double>::infinity()};
}

// eta << omega approximation of the asymptotic width: the ground-state width
// hbar/(2 omega M) of the damping-shifted oscillator.
inline double sigma_xi_sq_ground_limit(const ModelParams& p) {
    p.validate();
    p.require_underdamped("sigma_xi_sq_ground_limit");
    return 0.5 * p.hbar / (p.omega() * p.mass);
}

} // namespace collapse
