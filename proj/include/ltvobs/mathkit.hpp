#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "ltvobs/errors.hpp"

namespace ltvobs {

using Vec = std::vector<double>;

/// Dense row-major matrix sized at runtime. Everything in this toolkit works
/// at n = 2..3, so there are no decompositions, just the arithmetic the
/// observers need (products, determinant, adjugate).
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
    Mat(std::size_t r, std::size_t c, std::initializer_list<double> entries);

    static Mat identity(std::size_t n);

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool square() const { return rows == cols; }
};

Mat operator+(const Mat& m, const Mat& n);
Mat operator-(const Mat& m, const Mat& n);
Mat operator*(const Mat& m, const Mat& n);
Mat operator*(double s, const Mat& m);
Vec operator*(const Mat& m, const Vec& v);

Vec operator+(const Vec& v, const Vec& w);
Vec operator-(const Vec& v, const Vec& w);
Vec operator*(double s, const Vec& v);

double dot(const Vec& v, const Vec& w);
double norm_inf(const Vec& v);
double norm_inf(const Mat& m);

bool all_finite(const Vec& v);
bool all_finite(const Mat& m);

/// Determinant by closed form for n <= 3, cofactor expansion above.
double det(const Mat& m);

/// Adjugate (transposed cofactor matrix): adjugate(m) * m = det(m) * I.
Mat adjugate(const Mat& m);

/// Number of equal RK4 substeps needed to keep a scalar gradient flow with
/// decay rate `rate` inside the integrator's accurate/monotone region over
/// one interval of length h (rate_times_h = rate * h).
int stable_substeps(double rate_times_h);

namespace detail {

inline void check_finite(const Vec& k, double t) {
    if (!all_finite(k)) throw DivergenceError("rk4 derivative", t);
}
inline void check_finite(const Mat& k, double t) {
    if (!all_finite(k)) throw DivergenceError("rk4 derivative", t);
}
inline void check_finite(double k, double t) {
    if (!std::isfinite(k)) throw DivergenceError("rk4 derivative", t);
}

}  // namespace detail

/// One classical 4th-order Runge-Kutta step of x' = f(t, x) over [t, t+h].
template <class F>
Vec rk4_step(F&& f, double t, const Vec& x, double h) {
    const Vec k1 = f(t, x);
    detail::check_finite(k1, t);
    const Vec k2 = f(t + 0.5 * h, x + 0.5 * h * k1);
    detail::check_finite(k2, t);
    const Vec k3 = f(t + 0.5 * h, x + 0.5 * h * k2);
    detail::check_finite(k3, t);
    const Vec k4 = f(t + h, x + h * k3);
    detail::check_finite(k4, t);
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = x[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

template <class F>
double rk4_step_scalar(F&& f, double t, double x, double h) {
    const double k1 = f(t, x);
    detail::check_finite(k1, t);
    const double k2 = f(t + 0.5 * h, x + 0.5 * h * k1);
    detail::check_finite(k2, t);
    const double k3 = f(t + 0.5 * h, x + 0.5 * h * k2);
    detail::check_finite(k3, t);
    const double k4 = f(t + h, x + h * k3);
    detail::check_finite(k4, t);
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <class F>
Mat rk4_step_mat(F&& f, double t, const Mat& x, double h) {
    const Mat k1 = f(t, x);
    detail::check_finite(k1, t);
    const Mat k2 = f(t + 0.5 * h, x + 0.5 * h * k1);
    detail::check_finite(k2, t);
    const Mat k3 = f(t + 0.5 * h, x + 0.5 * h * k2);
    detail::check_finite(k3, t);
    const Mat k4 = f(t + h, x + h * k3);
    detail::check_finite(k4, t);
    Mat out(x.rows, x.cols);
    for (std::size_t i = 0; i < x.a.size(); ++i)
        out.a[i] = x.a[i] + (h / 6.0) * (k1.a[i] + 2.0 * k2.a[i] + 2.0 * k3.a[i] + k4.a[i]);
    return out;
}

}  // namespace ltvobs
