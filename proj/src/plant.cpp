#include "ltvobs/plant.hpp"

#include <cmath>
#include <string>

namespace ltvobs {

double theta_true(const SystemSpec& spec, double t) {
    return spec.a1 * std::sin(spec.omega * t) + spec.a2 * std::cos(spec.omega * t);
}

PlantState plant_init(const SystemSpec& spec, double h) {
    PlantState s{0.0, 0, spec.x0, DelayLine(h, spec.d + 1.0)};
    s.history.push(0.0, spec.x0);
    return s;
}

void plant_step(const SystemSpec& spec, PlantState& s, double h) {
    auto rhs = [&spec](double tau, const Vec& x) {
        Vec dx = spec.A(tau) * x;
        const double th = theta_true(spec, tau);
        const double ut = spec.u(tau);
        const Vec b = spec.B(tau);
        for (std::size_t i = 0; i < dx.size(); ++i) dx[i] += th * x[i] + b[i] * ut;
        return dx;
    };
    Vec x_new = rk4_step(rhs, s.t, s.x, h);
    if (!all_finite(x_new)) throw DivergenceError("plant state", s.t + h);
    s.x = std::move(x_new);
    ++s.steps;
    s.t = static_cast<double>(s.steps) * h;
    s.history.push(s.t, s.x);
}

Vec measure(const PlantState& s, double d) {
    if (s.t < d - 1e-9)
        throw NotAvailableError("measurement not available before t=" + std::to_string(d));
    return s.history.sample(s.t - d);
}

}  // namespace ltvobs
