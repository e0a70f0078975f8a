#include "ltvobs/filtbank.hpp"

#include <cmath>

namespace ltvobs {

FilterSpec first_order_lag(double lambda) {
    return {{lambda}, {lambda, 1.0}};
}

FilterSpec first_order_washout(double lambda) {
    return {{0.0, lambda}, {lambda, 1.0}};
}

FilterSpec cubic_lag(double lambda, int numerator_power) {
    if (numerator_power < 0 || numerator_power > 3)
        throw RealizationError("cubic_lag numerator power must be in [0, 3]");
    const double l3 = lambda * lambda * lambda;
    std::vector<double> num(static_cast<std::size_t>(numerator_power) + 1, 0.0);
    num.back() = l3;
    // (p + lambda)^3
    std::vector<double> den{l3, 3.0 * lambda * lambda, 3.0 * lambda, 1.0};
    return {num, den};
}

FilterState realize(const FilterSpec& spec) {
    std::vector<double> num = spec.num;
    std::vector<double> den = spec.den;
    while (!num.empty() && num.back() == 0.0) num.pop_back();
    while (!den.empty() && den.back() == 0.0) den.pop_back();
    if (den.empty()) throw RealizationError("denominator is zero");
    if (num.empty()) num.push_back(0.0);
    if (num.size() > den.size())
        throw RealizationError("improper transfer function (numerator degree exceeds denominator)");

    // normalize to monic denominator
    const double lead = den.back();
    for (double& c : den) c /= lead;
    for (double& c : num) c /= lead;

    const std::size_t n = den.size() - 1;
    std::vector<double> b(n + 1, 0.0);
    for (std::size_t i = 0; i < num.size(); ++i) b[i] = num[i];

    FilterState f;
    f.D = b[n];
    if (n == 0) return f;

    f.A = Mat(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) f.A(i, i + 1) = 1.0;
    for (std::size_t j = 0; j < n; ++j) f.A(n - 1, j) = -den[j];
    f.B = Vec(n, 0.0);
    f.B[n - 1] = 1.0;
    f.C = Vec(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) f.C[i] = b[i] - f.D * den[i];
    f.z = Vec(n, 0.0);
    return f;
}

double filter_step(FilterState& f, double u, double h) {
    if (!f.primed) {
        f.u_prev = u;
        f.primed = true;
    }
    const double u0 = f.u_prev;
    const double du = u - u0;
    if (!f.z.empty()) {
        auto rhs = [&](double s, const Vec& z) {
            const double us = u0 + du * (s / h);
            Vec dz = f.A * z;
            for (std::size_t i = 0; i < dz.size(); ++i) dz[i] += f.B[i] * us;
            return dz;
        };
        f.z = rk4_step(rhs, 0.0, f.z, h);
    }
    f.u_prev = u;
    const double y = (f.z.empty() ? 0.0 : dot(f.C, f.z)) + f.D * u;
    if (!std::isfinite(y)) throw DivergenceError("filter output", std::nan(""));
    return y;
}

}  // namespace ltvobs
