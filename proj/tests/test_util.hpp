// test_util.hpp — shared helpers for the unit suites: relative error,
// deterministic parameter generators, and the reference parameter set.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "collapse/model.hpp"
#include "collapse/numerics.hpp"

namespace testutil {

inline double rel_err(double got, double want) {
    const double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

// hbar = M = 1, period 1, eta = 2, d = 3 (the reference set all figures use)
inline collapse::ModelParams fig_params() {
    collapse::ModelParams p;
    p.mass = 1.0;
    p.hbar = 1.0;
    p.omega0 = 2.0 * collapse::num::pi;
    p.eta = 2.0;
    p.field = 3.0 * p.omega0 * p.omega0;
    return p;
}

// Deterministic stream of doubles in [lo, hi).
struct Rng {
    std::uint64_t seed;
    std::uint64_t counter = 0;

    explicit Rng(std::uint64_t s) : seed(s) {}
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * collapse::num::u01(collapse::num::counter_bits(seed, counter++, 0));
    }
};

// Random-but-reproducible oscillator parameters spanning all three regimes.
inline std::vector<collapse::ModelParams> random_params(std::size_t n, std::uint64_t seed,
                                                        bool include_overdamped = true) {
    Rng rng(seed);
    std::vector<collapse::ModelParams> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        collapse::ModelParams p;
        p.mass = rng.uniform(0.5, 3.0);
        p.hbar = 1.0;
        p.omega0 = rng.uniform(0.8, 6.0);
        const double max_ratio = include_overdamped ? 2.6 : 1.8;
        p.eta = p.omega0 * rng.uniform(0.0, max_ratio);
        p.field = rng.uniform(-2.0, 2.0) * p.omega0 * p.omega0;
        out.push_back(p);
    }
    return out;
}

inline std::vector<double> log_time_grid(double t_max, std::size_t n) {
    std::vector<double> t(n);
    t[0] = 0.0;
    const double t_min = 1e-6 * t_max;
    for (std::size_t i = 1; i < n; ++i) {
        const double f = static_cast<double>(i - 1) / static_cast<double>(n - 2);
        t[i] = t_min * std::pow(t_max / t_min, f);
    }
    return t;
}

} // namespace testutil
