#pragma once

#include <cmath>
#include <string>

#include "ltvobs/mathkit.hpp"

namespace ltvobs {

/// Full configuration of one simulation run. Defaults reproduce the bundled
/// benchmark in its delayed (d = 2) form.
struct RunConfig {
    // [system]
    double d = 2.0;
    double a1 = 1.0;
    double a2 = std::sqrt(3.0);
    double omega = 3.0;
    Vec x0{1.0, 2.0};

    // [filters]
    double lambda1 = 10.0;
    double lambda2 = 10.0;
    double lambda3 = 10.0;

    // [gains]
    double gamma1 = 10.0;
    double gamma2 = 10.0;
    double gamma3 = 100.0;
    double gamma_w = -1.0;  // <= 0 means "follow gamma3"

    // [run]
    double h = 1e-3;
    double horizon = 40.0;
    double mu = 0.01;
    double v_floor = 1e-8;
    double t_switch = 5.0;
    int decimation = 10;
    bool oracle_theta = false;
    bool omega_known = false;
    bool freeze_omega_at_switch = false;
    bool observer_integrate_from_switch = false;
    std::string out;

    double gammaw() const { return gamma_w > 0.0 ? gamma_w : gamma3; }
};

/// Parses a flat sectioned key/value document ([system], [filters], [gains],
/// [run]). Dotted keys (gains.gamma1 = 50) work with or without section
/// headers. Missing keys keep their defaults; unknown keys and out-of-range
/// values raise ConfigError naming the key.
RunConfig load_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

void validate(const RunConfig& cfg);

/// "<scenario>_<delay>_<gains>.csv"
std::string default_output_name(const std::string& scenario, const RunConfig& cfg);

/// Sets one numeric parameter by its config name (e.g. "gamma2"). Used by
/// the sweep machinery.
void set_gain(RunConfig& cfg, const std::string& name, double value);

}  // namespace ltvobs
