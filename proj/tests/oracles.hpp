#pragma once

// Test-side oracles, independent of the library paths they check: matrix
// exponential by scaling-and-squaring Taylor, a least-squares sinusoid fit
// for frequency responses, quadrature helpers for the closed-form decay
// laws, and a small deterministic RNG.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "ltvobs/mathkit.hpp"

namespace oracles {

using ltvobs::Mat;
using ltvobs::Vec;
using ltvobs::operator*;
using ltvobs::operator+;
using ltvobs::operator-;

inline Mat expm(const Mat& m) {
    const double norm = ltvobs::norm_inf(m) * static_cast<double>(m.rows);
    int s = 0;
    while (norm / std::pow(2.0, s) > 0.25) ++s;
    Mat a = (1.0 / std::pow(2.0, s)) * m;
    Mat term = Mat::identity(m.rows);
    Mat sum = term;
    for (int k = 1; k <= 24; ++k) {
        term = (1.0 / k) * (term * a);
        sum = sum + term;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

struct Lcg {
    std::uint64_t state = 0x2545f4914f6cdd1dULL;
    double uniform(double lo, double hi) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        const double u = static_cast<double>(state >> 11) / 9007199254740992.0;
        return lo + (hi - lo) * u;
    }
};

/// Least-squares fit y ~ a sin(w t) + b cos(w t) + c on samples; returns the
/// gain and phase of the sinusoidal part. Exact for signals of that form
/// regardless of windowing (solves the 3x3 normal equations).
inline void fit_sinusoid(const std::vector<double>& t, const std::vector<double>& y, double w,
                         double& gain, double& phase) {
    Mat m(3, 3);
    Vec rhs(3, 0.0);
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double b0 = std::sin(w * t[i]);
        const double b1 = std::cos(w * t[i]);
        const double b2 = 1.0;
        const double base[3] = {b0, b1, b2};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m(r, c) += base[r] * base[c];
            rhs[r] += base[r] * y[i];
        }
    }
    const Vec sol = (1.0 / ltvobs::det(m)) * (ltvobs::adjugate(m) * rhs);
    gain = std::hypot(sol[0], sol[1]);
    phase = std::atan2(sol[1], sol[0]);
}

/// Frequency response of num(p)/den(p) at p = jw (coefficients ascending).
inline std::complex<double> transfer_at(const std::vector<double>& num,
                                        const std::vector<double>& den, double w) {
    const std::complex<double> jw(0.0, w);
    std::complex<double> n = 0.0, d = 0.0, p = 1.0;
    for (std::size_t i = 0; i < std::max(num.size(), den.size()); ++i) {
        if (i < num.size()) n += num[i] * p;
        if (i < den.size()) d += den[i] * p;
        p *= jw;
    }
    return n / d;
}

inline double wrap_angle(double a) {
    while (a > M_PI) a -= 2.0 * M_PI;
    while (a < -M_PI) a += 2.0 * M_PI;
    return a;
}

/// Dual-route check of the scalar decay law err' = -g * reg(t)^2 * err on a
/// sampled regressor: route A integrates the ODE with substepped RK4 on the
/// piecewise-linear interpolant, route B exponentiates the exact per-segment
/// integral of the same interpolant. Returns the worst relative mismatch
/// (log-space, so underflow of the decaying solution cannot mask errors).
inline double decay_replay_mismatch(const std::vector<double>& t, const std::vector<double>& reg,
                                    double g, double z_target = 0.02) {
    double lnA = 0.0, lnB = 0.0, worst = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double h = t[i + 1] - t[i];
        const double r0 = reg[i], r1 = reg[i + 1];
        lnB += -g * h * (r0 * r0 + r0 * r1 + r1 * r1) / 3.0;
        const double zmax = g * std::max(r0 * r0, r1 * r1) * h;
        const int m = std::max(1, static_cast<int>(std::ceil(zmax / z_target)));
        const double hs = h / m;
        auto rr = [&](double s) { return r0 + (r1 - r0) * (s / h); };
        for (int j = 0; j < m; ++j) {
            const double s0 = j * hs;
            auto f = [&](double s, double y) { return -g * rr(s) * rr(s) * y; };
            const double k1 = f(s0, 1.0);
            const double k2 = f(s0 + 0.5 * hs, 1.0 + 0.5 * hs * k1);
            const double k3 = f(s0 + 0.5 * hs, 1.0 + 0.5 * hs * k2);
            const double k4 = f(s0 + hs, 1.0 + hs * k3);
            lnA += std::log(1.0 + hs / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
        }
        worst = std::max(worst, std::abs(std::expm1(lnA - lnB)));
    }
    return worst;
}

/// Simpson quadrature of f over [a, b] with n (even) panels.
template <class F>
double simpson(F&& f, double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace oracles
