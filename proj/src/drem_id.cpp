#include "ltvobs/drem_id.hpp"

#include <cmath>

namespace ltvobs {

Chi chi_eval(double omega_hat, double t, double d) {
    const double s = omega_hat * (t - d);
    return {std::sin(s), std::cos(s)};
}

DremState make_drem(std::size_t n, double lambda2, double lambda3, double gamma2) {
    if (!(gamma2 > 0.0)) throw ConfigError("gamma2 must be positive");
    if (!(lambda3 > 0.0)) throw ConfigError("lambda3 must be positive");
    DremState st;
    st.lambda3 = lambda3;
    st.gamma2 = gamma2;
    for (std::size_t i = 0; i < n; ++i) {
        st.xdot_f.push_back(realize(first_order_washout(lambda2)));
        st.ax_f.push_back(realize(first_order_lag(lambda2)));
        st.c1x_f.push_back(realize(first_order_lag(lambda2)));
        st.c2x_f.push_back(realize(first_order_lag(lambda2)));
    }
    return st;
}

RegressionRow build_regression(DremState& st, const Vec& x_d, const Mat& A_d, const Vec& B_d,
                               double u_d, const Chi& chi, double h, double t) {
    const std::size_t n = st.xdot_f.size();
    if (x_d.size() != n) throw DimensionError("regression: x_d size mismatch");
    Vec drift = A_d * x_d;
    for (std::size_t i = 0; i < n; ++i) drift[i] += B_d[i] * u_d;

    RegressionRow row{Vec(n), Vec(n), Vec(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double xd = filter_step(st.xdot_f[i], x_d[i], h);
        const double ax = filter_step(st.ax_f[i], drift[i], h);
        row.Y[i] = xd - ax;
        row.psi1[i] = filter_step(st.c1x_f[i], chi.chi1 * x_d[i], h);
        row.psi2[i] = filter_step(st.c2x_f[i], chi.chi2 * x_d[i], h);
    }
    if (!all_finite(row.Y) || !all_finite(row.psi1) || !all_finite(row.psi2))
        throw DivergenceError("amplitude regression", t);
    return row;
}

void drem_a_update(DremState& st, double h) {
    st.Delta = det(st.Omega);
    const Vec Z = adjugate(st.Omega) * st.Y;
    const double D = st.Delta;
    const double g = st.gamma2;
    const int m = stable_substeps(g * D * D * h);
    const double hs = h / m;
    for (std::size_t i = 0; i < st.a_hat.size(); ++i) {
        double a = st.a_hat[i];
        for (int s = 0; s < m; ++s)
            a = rk4_step_scalar([&](double, double av) { return -g * D * (D * av - Z[i]); }, 0.0, a,
                                hs);
        st.a_hat[i] = a;
    }
}

void drem_step(DremState& st, double Y1, double psi11, double psi21, double h, double t) {
    const double l3 = st.lambda3;
    // extension: first-order forgetting integrators driven by Psi' * Y1 and
    // Psi' * Psi, with Psi = [psi11 psi21]
    auto y_rhs = [&](double, const Vec& y) {
        return Vec{-l3 * y[0] + l3 * psi11 * Y1, -l3 * y[1] + l3 * psi21 * Y1};
    };
    st.Y = rk4_step(y_rhs, 0.0, st.Y, h);
    auto omega_rhs = [&](double, const Mat& om) {
        Mat d(2, 2);
        d(0, 0) = -l3 * om(0, 0) + l3 * psi11 * psi11;
        d(0, 1) = -l3 * om(0, 1) + l3 * psi11 * psi21;
        d(1, 0) = -l3 * om(1, 0) + l3 * psi21 * psi11;
        d(1, 1) = -l3 * om(1, 1) + l3 * psi21 * psi21;
        return d;
    };
    st.Omega = rk4_step_mat(omega_rhs, 0.0, st.Omega, h);
    if (!all_finite(st.Y) || !all_finite(st.Omega)) throw DivergenceError("extension state", t);
    drem_a_update(st, h);
    if (!all_finite(st.a_hat)) throw DivergenceError("a_hat", t);
}

double theta_hat(const Vec& a_hat, double omega_hat, double t) {
    return a_hat[0] * std::sin(omega_hat * t) + a_hat[1] * std::cos(omega_hat * t);
}

}  // namespace ltvobs
