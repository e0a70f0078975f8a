#pragma once

#include "ltvobs/filtbank.hpp"

namespace ltvobs {

/// sin/cos basis pair evaluated at the delayed instant t - d.
struct Chi {
    double chi1 = 0.0;
    double chi2 = 1.0;
};

Chi chi_eval(double omega_hat, double t, double d);

/// One grid sample of the filtered regression, component-wise over x_d.
/// Row 1 (index 0) drives the dynamic extension; the remaining rows are
/// produced for logging and residual checks only.
struct RegressionRow {
    Vec Y;
    Vec psi1;
    Vec psi2;
};

/// Stage 2: estimates the harmonic amplitudes (a1, a2). A first-order
/// filtered regression Y1 = a1 psi11 + a2 psi21 is extended with the
/// forgetting-factor integrators for Y and Omega, and the adjugate/
/// determinant mixing decouples the two unknowns into independent scalar
/// gradient flows.
struct DremState {
    std::vector<FilterState> xdot_f;  // washout on x_d components
    std::vector<FilterState> ax_f;    // lag on (A_d x_d + B_d u_d) components
    std::vector<FilterState> c1x_f;   // lag on chi1 * x_d components
    std::vector<FilterState> c2x_f;   // lag on chi2 * x_d components
    Vec Y{0.0, 0.0};
    Mat Omega{2, 2};
    Vec a_hat{0.0, 0.0};
    double lambda3 = 10.0;
    double gamma2 = 1.0;
    double Delta = 0.0;  // det(Omega) from the last update
};

DremState make_drem(std::size_t n, double lambda2, double lambda3, double gamma2);

RegressionRow build_regression(DremState& st, const Vec& x_d, const Mat& A_d, const Vec& B_d,
                               double u_d, const Chi& chi, double h, double t = 0.0);

/// Advances Y, Omega with the fresh regression sample, then mixes and
/// advances a_hat.
void drem_step(DremState& st, double Y1, double psi11, double psi21, double h, double t = 0.0);

/// Mixing half of drem_step: recomputes Delta and Z from the current
/// Y/Omega and advances a_hat alone.
void drem_a_update(DremState& st, double h);

/// Delay-compensated parameter estimate a1 sin(omega t) + a2 cos(omega t).
double theta_hat(const Vec& a_hat, double omega_hat, double t);

}  // namespace ltvobs
