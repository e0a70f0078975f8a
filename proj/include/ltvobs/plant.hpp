#pragma once

#include <cstdint>
#include <functional>

#include "ltvobs/delayline.hpp"
#include "ltvobs/mathkit.hpp"

namespace ltvobs {

/// Continuous-time description of the simulated system: known time-varying
/// A(t), B(t) and input u(t), plus a harmonic scalar term
/// theta(t) = a1 sin(omega t) + a2 cos(omega t) that enters the dynamics as
/// theta(t) * I. The full state is measured with a constant delay d.
struct SystemSpec {
    std::size_t n = 2;
    std::function<Mat(double)> A;
    std::function<Vec(double)> B;
    std::function<double(double)> u;
    double a1 = 0.0;
    double a2 = 0.0;
    double omega = 1.0;  // rad/s
    double d = 0.0;      // measurement delay [s]
    Vec x0;
};

/// theta evaluated analytically from its amplitudes; satisfies
/// d2(theta)/dt2 = -omega^2 theta.
double theta_true(const SystemSpec& spec, double t);

struct PlantState {
    double t = 0.0;
    std::uint64_t steps = 0;
    Vec x;
    DelayLine history;
};

PlantState plant_init(const SystemSpec& spec, double h);

/// Advances x' = A(t) x + theta(t) x + B(t) u(t) one RK4 step and records the
/// new state in the history.
void plant_step(const SystemSpec& spec, PlantState& s, double h);

/// Delayed full-state measurement y(t) = x(t - d). Throws NotAvailableError
/// for t < d, where no measurement exists yet.
Vec measure(const PlantState& s, double d);

}  // namespace ltvobs
