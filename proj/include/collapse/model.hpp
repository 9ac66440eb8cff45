// model.hpp — physical constants of the main oscillator and the spin state

#pragma once

#include <cmath>
#include <string>

#include "collapse/errors.hpp"
#include "collapse/numerics.hpp"

namespace collapse {

enum class DampingRegime { underdamped, critical, overdamped };

// Main-oscillator constants. Defaults are the reference parameter set used
// throughout the builtin scenarios (hbar = M = 1, period 1, eta = 2, d = 3);
// nothing downstream assumes these values.
struct ModelParams {
    double mass = 1.0;                      // M, mass units
    double omega0 = 2.0 * num::pi;          // natural frequency, rad/time
    double eta = 2.0;                       // damping rate, 1/time
    double field = 3.0 * 4.0 * num::pi * num::pi; // B; d = B/omega0^2 has length units
    double hbar = 1.0;                      // action units

    // omega^2 = omega0^2 - eta^2/4; sign selects the damping regime.
    double omega_sq() const { return omega0 * omega0 - 0.25 * eta * eta; }

    // Damping-shifted frequency, defined for the underdamped regime.
    double omega() const { return std::sqrt(omega_sq()); }

    DampingRegime regime() const {
        const double w2 = omega_sq();
        const double scale = 1e-8 * omega0 * omega0;
        if (w2 > scale) return DampingRegime::underdamped;
        if (w2 < -scale) return DampingRegime::overdamped;
        return DampingRegime::critical;
    }

    void validate() const {
        if (!(mass > 0.0) || !std::isfinite(mass))
            throw ParameterError("ModelParams: mass must be positive and finite");
        if (!(omega0 > 0.0) || !std::isfinite(omega0))
            throw ParameterError("ModelParams: omega0 must be positive and finite");
        if (!(eta >= 0.0) || !std::isfinite(eta))
            throw ParameterError("ModelParams: eta must be nonnegative and finite");
        if (!(hbar > 0.0) || !std::isfinite(hbar))
            throw ParameterError("ModelParams: hbar must be positive and finite");
        if (!std::isfinite(field) || !std::isfinite(field / (omega0 * omega0)))
            throw ParameterError("ModelParams: field must give a finite displacement");
    }

    void require_underdamped(const char* what) const {
        if (regime() != DampingRegime::underdamped)
            throw UnsupportedRegimeError(std::string(what) +
                                         ": requires the underdamped regime (omega0 > eta/2)");
    }
};

// Spin-1/2 pure state on the Bloch sphere. phi is carried through the API but
// drops out of every density below (it only multiplies the spin-down branch
// by a unit phase).
struct BlochVector {
    double theta = 0.0; // polar angle in [0, pi]
    double phi = 0.0;   // azimuth in [0, 2 pi)

    void validate() const {
        if (!(theta >= 0.0 && theta <= num::pi))
            throw ParameterError("BlochVector: theta must lie in [0, pi]");
        if (!std::isfinite(phi))
            throw ParameterError("BlochVector: phi must be finite");
    }
};

} // namespace collapse
