// numerics.hpp — small numerical kernels shared across the library:
// regime-robust damped trig kernel, compensated summation, quadrature,
// counter-based uniform RNG, and a minimal parallel_for.

#pragma once

#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "collapse/errors.hpp"

namespace collapse::num {

inline constexpr double pi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Damped trigonometric kernel.
//
// Evaluates  dc = e^{-eta t/2} * C(t)  and  ds = e^{-eta t/2} * S(t)  where
//   C(t) = cos(w t),        S(t) = sin(w t)/w        if w2 = w^2 > 0
//   C(t) = cosh(wh t),      S(t) = sinh(wh t)/wh     if w2 < 0, wh = sqrt(-w2)
//   series in w2 t^2                                  near w2 t^2 ~ 0
// S has units of time; both limits agree at w2 = 0 (C = 1, S = t).
// The hyperbolic branch is written with non-positive exponents only, so no
// intermediate overflows even at large eta*t (wh < eta/2 always holds when
// w2 = w0^2 - eta^2/4 < 0).
// ---------------------------------------------------------------------------
struct DampedTrig {
    double dc; // e^{-eta t/2} C(t), dimensionless
    double ds; // e^{-eta t/2} S(t), time
};

inline DampedTrig damped_trig(double w2, double eta, double t) {
    const double x = w2 * t * t;
    if (std::abs(x) < 1e-8) {
        // C = 1 - x/2 + x^2/24 - x^3/720, S = t(1 - x/6 + x^2/120 - x^3/5040)
        const double damp = std::exp(-0.5 * eta * t);
        const double c = 1.0 + x * (-0.5 + x * (1.0 / 24.0 - x / 720.0));
        const double s = t * (1.0 + x * (-1.0 / 6.0 + x * (1.0 / 120.0 - x / 5040.0)));
        return {damp * c, damp * s};
    }
    if (w2 > 0.0) {
        const double w = std::sqrt(w2);
        const double damp = std::exp(-0.5 * eta * t);
        return {damp * std::cos(w * t), damp * std::sin(w * t) / w};
    }
    const double wh = std::sqrt(-w2);
    // e^{-eta t/2} cosh(wh t) = (e^{(wh - eta/2)t} + e^{-(wh + eta/2)t})/2
    const double ep = std::exp((wh - 0.5 * eta) * t);
    const double em = std::exp(-(wh + 0.5 * eta) * t);
    return {0.5 * (ep + em), 0.5 * (ep - em) / wh};
}

// ---------------------------------------------------------------------------
// Neumaier compensated accumulator.
// ---------------------------------------------------------------------------
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

// Trapezoid rule over uniformly spaced samples.
inline double trapezoid(std::span<const double> y, double h) {
    if (y.size() < 2) return 0.0;
    CompensatedSum acc;
    acc.add(0.5 * y.front());
    for (std::size_t i = 1; i + 1 < y.size(); ++i) acc.add(y[i]);
    acc.add(0.5 * y.back());
    return h * acc.value();
}

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature.
// ---------------------------------------------------------------------------
namespace detail {

template <typename F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = left + right - whole;
    if (depth <= 0) throw OracleFailureError("adaptive Simpson: max recursion depth reached");
    if (std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol, int max_depth = 48) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// ---------------------------------------------------------------------------
// Counter-based uniform random bits: stateless, order-independent, so a
// partitioned Monte-Carlo reduction is bit-identical regardless of schedule.
// ---------------------------------------------------------------------------
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// k-th 64-bit word of the stream derived from (seed, counter).
inline std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t counter, std::uint64_t k) {
    return splitmix64(splitmix64(seed + 0x632BE59BD9B4E019ull * (counter + 1)) + k);
}

// uniform in [0, 1) from the top 53 bits
inline double u01(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// ---------------------------------------------------------------------------
// parallel_for: splits [0, n) into contiguous chunks. Each chunk writes to
// disjoint output, so results do not depend on the thread count. The first
// exception thrown by any chunk is rethrown on the calling thread.
// ---------------------------------------------------------------------------
template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const unsigned nt = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::mutex err_mutex;
    std::exception_ptr err;
    const std::size_t chunk = (n + nt - 1) / nt;
    for (unsigned w = 0; w < nt; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body, &err_mutex, &err] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(err_mutex);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

// coth(x) for x > 0, with the x -> inf plateau handled explicitly.
inline double coth(double x) {
    if (x > 19.0) return 1.0;
    return 1.0 / std::tanh(x);
}

} // namespace collapse::num
