#include "ltvobs/freq_id.hpp"

#include <algorithm>
#include <cmath>

namespace ltvobs {

FreqIdState make_freq_id(double lambda1, double gamma1, double v_floor) {
    if (!(gamma1 > 0.0)) throw ConfigError("gamma1 must be positive");
    if (!(v_floor > 0.0)) throw ConfigError("v_floor must be positive");
    FreqIdState st;
    st.xi_d3 = realize(cubic_lag(lambda1, 3));
    st.xi_d1 = realize(cubic_lag(lambda1, 1));
    st.beta_d2 = realize(cubic_lag(lambda1, 2));
    st.beta_d0 = realize(cubic_lag(lambda1, 0));
    st.gamma1 = gamma1;
    st.v_floor = v_floor;
    return st;
}

double compute_V(const Vec& y) {
    return dot(y, y);
}

double compute_alpha(const Vec& x_d, const Mat& A_d, const Vec& B_d, double u_d) {
    if (A_d.rows != x_d.size() || A_d.cols != x_d.size() || B_d.size() != x_d.size())
        throw DimensionError("alpha: dimension mismatch");
    double quad = 0.0;
    for (std::size_t i = 0; i < x_d.size(); ++i)
        for (std::size_t j = 0; j < x_d.size(); ++j)
            quad += x_d[i] * (A_d(j, i) + A_d(i, j)) * x_d[j];
    return quad + 2.0 * u_d * dot(x_d, B_d);
}

double compute_beta(double alpha, double V, double v_floor) {
    return -alpha / std::max(V, v_floor);
}

void k_hat_update(FreqIdState& st, double q, double phi, double h) {
    const int m = stable_substeps(st.gamma1 * phi * phi * h);
    const double hs = h / m;
    const double g = st.gamma1;
    for (int i = 0; i < m; ++i)
        st.k_hat = rk4_step_scalar([&](double, double k) { return g * phi * (q - phi * k); }, 0.0,
                                   st.k_hat, hs);
}

RegressorSample freq_id_core_step(FreqIdState& st, double xi, double beta, double t, double h) {
    const double xi3 = filter_step(st.xi_d3, xi, h);
    const double xi1 = filter_step(st.xi_d1, xi, h);
    const double b2 = filter_step(st.beta_d2, beta, h);
    const double b0 = filter_step(st.beta_d0, beta, h);
    RegressorSample rs{xi3 + b2, xi1 + b0, t};
    if (!std::isfinite(rs.q) || !std::isfinite(rs.phi))
        throw DivergenceError("frequency regressor", t);
    k_hat_update(st, rs.q, rs.phi, h);
    if (!std::isfinite(st.k_hat)) throw DivergenceError("k_hat", t);
    return rs;
}

RegressorSample freq_id_step(FreqIdState& st, const Vec& y, const Mat& A_d, const Vec& B_d,
                             double u_d, double t, double h) {
    const double V = compute_V(y);
    st.v_floor_active = V < st.v_floor;
    const double Vf = std::max(V, st.v_floor);
    const double xi = std::log(Vf);
    const double beta = compute_beta(compute_alpha(y, A_d, B_d, u_d), V, st.v_floor);
    return freq_id_core_step(st, xi, beta, t, h);
}

double omega_hat(double k_hat) {
    return std::sqrt(std::abs(k_hat));
}

}  // namespace ltvobs
