#pragma once

#include "ltvobs/mathkit.hpp"

namespace ltvobs {

/// Scalar transfer function num(p)/den(p), coefficients in ascending powers
/// of the differential operator p. Equal degrees (biproper) are allowed;
/// improper functions are rejected at realization time.
struct FilterSpec {
    std::vector<double> num;
    std::vector<double> den;
};

FilterSpec first_order_lag(double lambda);      // lambda / (p + lambda)
FilterSpec first_order_washout(double lambda);  // lambda p / (p + lambda)
/// lambda^3 p^m / (p + lambda)^3 with m in [0, 3]; the numerator power m
/// carries the differentiation so callers never differentiate signals
/// numerically.
FilterSpec cubic_lag(double lambda, int numerator_power);

/// Controllable canonical realization with feedthrough, plus the running
/// internal state. Inputs arrive as grid samples; each step advances the
/// state across one grid interval with the input interpolated linearly
/// between the previous and the new sample.
struct FilterState {
    Mat A;
    Vec B;
    Vec C;
    double D = 0.0;
    Vec z;
    double u_prev = 0.0;
    bool primed = false;
};

FilterState realize(const FilterSpec& spec);

/// Advances one grid interval with the new input sample and returns the
/// output at the end of the interval.
double filter_step(FilterState& f, double u, double h);

}  // namespace ltvobs
