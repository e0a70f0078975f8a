#pragma once

#include "ltvobs/filtbank.hpp"

namespace ltvobs {

/// Stage 1: identifies k = -omega^2 from the delayed full-state measurement.
/// The squared norm V = y'y is mapped through xi = ln V, the drift term
/// beta = -alpha/V is formed from the known matrices, and both signals run
/// through a bank of third-order filters whose numerators carry the
/// differentiation. The resulting scalar regression q = phi * k feeds a
/// gradient update for k_hat.
struct FreqIdState {
    FilterState xi_d3;    // p^3 numerator on xi
    FilterState xi_d1;    // p^1 numerator on xi
    FilterState beta_d2;  // p^2 numerator on beta
    FilterState beta_d0;  // p^0 numerator on beta
    double k_hat = 0.0;
    double gamma1 = 1.0;
    double v_floor = 1e-8;
    bool v_floor_active = false;  // true while the last step saw V below the floor
};

struct RegressorSample {
    double q = 0.0;
    double phi = 0.0;
    double t = 0.0;
};

FreqIdState make_freq_id(double lambda1, double gamma1, double v_floor);

double compute_V(const Vec& y);

/// alpha = x_d' (A_d' + A_d) x_d + 2 u_d x_d' B_d
double compute_alpha(const Vec& x_d, const Mat& A_d, const Vec& B_d, double u_d);

/// beta = -alpha / max(V, v_floor); the floor absorbs the V -> 0 singularity.
double compute_beta(double alpha, double V, double v_floor);

/// Gradient update k_hat' = gamma1 * phi * (q - phi * k_hat), integrated with
/// as many RK4 substeps as the local rate gamma1*phi^2*h requires.
void k_hat_update(FreqIdState& st, double q, double phi, double h);

/// Filter-bank half of the step, fed with precomputed (xi, beta). Exposed so
/// synthetic signals can drive the regression directly.
RegressorSample freq_id_core_step(FreqIdState& st, double xi, double beta, double t, double h);

RegressorSample freq_id_step(FreqIdState& st, const Vec& y, const Mat& A_d, const Vec& B_d,
                             double u_d, double t, double h);

double omega_hat(double k_hat);

}  // namespace ltvobs
