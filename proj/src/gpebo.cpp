#include "ltvobs/gpebo.hpp"

#include <cmath>
#include <utility>

namespace ltvobs {

namespace {

Vec flatten(const Mat& m) {
    return m.a;
}

Mat unflatten(const Vec& v, std::size_t n) {
    Mat m(n, n);
    m.a = v;
    return m;
}

}  // namespace

GpeboState make_gpebo(std::size_t n, double h, double d, double gamma3, double gamma_w, double mu,
                      double t0, Vec xi0) {
    if (!(gamma3 > 0.0)) throw ConfigError("gamma3 must be positive");
    if (!(gamma_w > 0.0)) throw ConfigError("gamma_w must be positive");
    if (!(mu > 0.0 && mu < 1.0)) throw ConfigError("mu must lie in (0,1)");
    GpeboState st;
    st.xi = xi0.empty() ? Vec(n, 0.0) : std::move(xi0);
    st.Phi = Mat::identity(n);
    st.xi_hist = DelayLine(h, d + 1.0);
    st.phi_hist = DelayLine(h, d + 1.0);
    st.xi_hist.push(t0, st.xi);
    st.phi_hist.push(t0, flatten(st.Phi));
    st.e_hat = Vec(n, 0.0);
    st.e_hat0 = Vec(n, 0.0);
    st.gamma3 = gamma3;
    st.gamma_w = gamma_w;
    st.mu = mu;
    st.R_last = Vec(n, 0.0);
    return st;
}

void gpebo_step(GpeboState& st, const std::function<Mat(double)>& A,
                const std::function<Vec(double)>& B, const std::function<double(double)>& u,
                const std::function<double(double)>& theta, double t, double h) {
    // same arithmetic shape as the plant right-hand side so that a matched
    // observer copy tracks the state bit for bit
    auto xi_rhs = [&](double tau, const Vec& v) {
        Vec dv = A(tau) * v;
        const double th = theta(tau);
        const double ut = u(tau);
        const Vec b = B(tau);
        for (std::size_t i = 0; i < dv.size(); ++i) dv[i] += th * v[i] + b[i] * ut;
        return dv;
    };
    auto phi_rhs = [&](double tau, const Mat& m) {
        Mat am = A(tau);
        const double th = theta(tau);
        for (std::size_t i = 0; i < am.rows; ++i) am(i, i) += th;
        return am * m;
    };
    Vec xi_new = rk4_step(xi_rhs, t, st.xi, h);
    Mat phi_new = rk4_step_mat(phi_rhs, t, st.Phi, h);
    if (!all_finite(xi_new) || !all_finite(phi_new))
        throw DivergenceError("observer state", t + h);
    st.xi = std::move(xi_new);
    st.Phi = std::move(phi_new);
    st.xi_hist.push(t + h, st.xi);
    st.phi_hist.push(t + h, flatten(st.Phi));
}

DelayedRegression delayed_regression(GpeboState& st, const Vec& y, double t, double d) {
    const double td = t - d;
    if (!st.xi_hist.covers(td) || !st.phi_hist.covers(td))
        throw OutOfRangeError("observer history does not cover t-d");
    DelayedRegression out;
    out.q = y - st.xi_hist.sample(td);
    const Mat phi_d = unflatten(st.phi_hist.sample(td), y.size());
    out.P = det(phi_d);
    out.R = adjugate(phi_d) * out.q;
    const double ap = std::abs(out.P);
    if (ap < 1e-12 || ap > 1e12) st.conditioning_warned = true;
    st.P_last = out.P;
    st.R_last = out.R;
    return out;
}

void e_gradient_step(GpeboState& st, double P, const Vec& R, double h) {
    const double g = st.gamma3;
    const int m = stable_substeps(g * P * P * h);
    const double hs = h / m;
    for (std::size_t i = 0; i < st.e_hat.size(); ++i) {
        double e = st.e_hat[i];
        for (int s = 0; s < m; ++s)
            e = rk4_step_scalar([&](double, double ev) { return -g * P * (P * ev - R[i]); }, 0.0, e,
                                hs);
        st.e_hat[i] = e;
    }
}

void finite_time_update(GpeboState& st, double P, double h) {
    const double g = st.gamma_w;
    const int m = stable_substeps(g * P * P * h);
    const double hs = h / m;
    for (int s = 0; s < m; ++s)
        st.w = rk4_step_scalar([&](double, double wv) { return -g * P * P * wv; }, 0.0, st.w, hs);
    if (st.w <= 1.0 - st.mu) st.tc_reached = true;
}

double clipped_weight(const GpeboState& st) {
    return st.w <= 1.0 - st.mu ? st.w : 1.0 - st.mu;
}

Vec e_finite_time(const GpeboState& st) {
    const double wc = clipped_weight(st);
    Vec out(st.e_hat.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = (st.e_hat[i] - wc * st.e_hat0[i]) / (1.0 - wc);
    return out;
}

StateEstimate state_estimate(const GpeboState& st) {
    StateEstimate est;
    est.x_hat = st.xi + st.Phi * e_finite_time(st);
    est.tc_reached = st.tc_reached;
    return est;
}

}  // namespace ltvobs
