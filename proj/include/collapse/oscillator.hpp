// oscillator.hpp — closed-form homogeneous-solution coefficients of the
// damped oscillator q'' + eta q' + omega0^2 q = 0 and derived constants.
// Every other module consumes these.

#pragma once

#include <cmath>

#include "collapse/model.hpp"
#include "collapse/numerics.hpp"

namespace collapse {

// Fundamental pair with a1(0) = 1, a2(0) = 0, a1'(0) = 0, a2'(0) = 1.
// a1, a2dot are dimensionless; a2 has units of time, a1dot of 1/time.
// Identities (used as self-tests, not assumed by the evaluation):
//   a1*a2dot - a1dot*a2 = e^{-eta t}
//   a1dot = -omega0^2 * a2
struct CoeffPair {
    double a1 = 1.0;
    double a2 = 0.0;
    double a1dot = 0.0;
    double a2dot = 1.0;
};

// Evaluates the coefficient pair at time t >= 0. The same expressions cover
// the underdamped, near-critical, and overdamped regimes through the damped
// trig kernel (trig / series / hyperbolic branches).
inline CoeffPair coeffs(const ModelParams& p, double t) {
    p.validate();
    if (!(t >= 0.0) || !std::isfinite(t))
        throw ParameterError("coeffs: t must be >= 0 (solution is derived for t > 0+)");

    const double w2 = p.omega_sq();
    const auto [dc, ds] = num::damped_trig(w2, p.eta, t);
    const double half_eta = 0.5 * p.eta;

    CoeffPair c;
    c.a1 = dc + half_eta * ds;
    c.a2 = ds;
    c.a2dot = dc - half_eta * ds;
    // product rule on a1 = e^{-eta t/2}(C + (eta/2) S); the dc terms cancel,
    // leaving -(eta^2/4 + w2) ds = -omega0^2 a2 up to rounding
    c.a1dot = -half_eta * c.a1 + (-w2 * ds + half_eta * dc);
    return c;
}

// a1 a2' - a1' a2; equals e^{-eta t} identically. Exposed as a self-test value.
inline double wronskian(const ModelParams& p, double t) {
    const CoeffPair c = coeffs(p, t);
    return c.a1 * c.a2dot - c.a1dot * c.a2;
}

// Static displacement of the split wells: d = B / omega0^2.
inline double displacement(const ModelParams& p) {
    p.validate();
    return p.field / (p.omega0 * p.omega0);
}

} // namespace collapse
