#pragma once

#include <functional>

#include "ltvobs/delayline.hpp"
#include "ltvobs/mathkit.hpp"

namespace ltvobs {

/// Stage 3 observer. An open-loop copy xi of the plant runs alongside the
/// fundamental matrix Phi of the same flow, so the state error stays
/// e(t) = Phi(t) e(0) with a constant unknown e(0). The delayed measurement
/// turns that into the regression q(t) = Phi(t-d) e(0), mixed through the
/// adjugate into per-component scalar regressions. e(0) is recovered by a
/// gradient flow plus a finite-time combination with a decaying weight w.
struct GpeboState {
    Vec xi;
    Mat Phi;
    DelayLine xi_hist;
    DelayLine phi_hist;  // Phi stored row-flattened
    Vec e_hat;
    Vec e_hat0;  // initial gradient estimate, kept for the finite-time formula
    double w = 1.0;
    double gamma3 = 100.0;
    double gamma_w = 100.0;
    double mu = 0.01;
    bool tc_reached = false;
    bool conditioning_warned = false;  // |P| left [1e-12, 1e12] at some point
    double P_last = 0.0;
    Vec R_last;
};

struct DelayedRegression {
    Vec q;
    double P = 0.0;
    Vec R;
};

struct StateEstimate {
    Vec x_hat;
    bool tc_reached = false;
};

GpeboState make_gpebo(std::size_t n, double h, double d, double gamma3, double gamma_w, double mu,
                      double t0 = 0.0, Vec xi0 = {});

/// Advances xi' = (A + theta I) xi + B u and Phi' = (A + theta I) Phi over
/// [t, t+h], evaluating the time-varying terms at the RK4 stage times, and
/// records both in their histories.
void gpebo_step(GpeboState& st, const std::function<Mat(double)>& A,
                const std::function<Vec(double)>& B, const std::function<double(double)>& u,
                const std::function<double(double)>& theta, double t, double h);

/// q = y - xi(t-d), P = det Phi(t-d), R = adjugate(Phi(t-d)) q. Also updates
/// the conditioning flag and the logged P/R.
DelayedRegression delayed_regression(GpeboState& st, const Vec& y, double t, double d);

/// e_hat' = -gamma3 P (P e_hat - R), component-wise, substepped as needed.
void e_gradient_step(GpeboState& st, double P, const Vec& R, double h);

/// w' = -gamma_w P^2 w plus the clipping bookkeeping; latches tc_reached
/// once w <= 1 - mu.
void finite_time_update(GpeboState& st, double P, double h);

double clipped_weight(const GpeboState& st);

/// e_FT = (e_hat - w_c e_hat(0)) / (1 - w_c); the divisor is bounded below
/// by mu through the clipping.
Vec e_finite_time(const GpeboState& st);

/// x_hat = xi + Phi e_FT.
StateEstimate state_estimate(const GpeboState& st);

}  // namespace ltvobs
