#include "ltvobs/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ltvobs {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("invalid number for " + key + ": '" + value + "'");
    }
    if (trim(value.substr(pos)) != "")
        throw ConfigError("invalid number for " + key + ": '" + value + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError("invalid boolean for " + key + ": '" + value + "'");
}

Vec parse_vector(const std::string& key, const std::string& value) {
    std::istringstream is(value);
    Vec v;
    double e = 0.0;
    while (is >> e) v.push_back(e);
    if (!is.eof()) throw ConfigError("invalid vector for " + key + ": '" + value + "'");
    return v;
}

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

void apply(RunConfig& cfg, const std::string& section, const std::string& key,
           const std::string& value) {
    const std::string full = section.empty() ? key : section + "." + key;
    auto is = [&](const char* sec, const char* k) {
        return (section == sec || section.empty()) && key == k;
    };

    if (is("system", "d")) cfg.d = parse_number(full, value);
    else if (is("system", "a1")) cfg.a1 = parse_number(full, value);
    else if (is("system", "a2")) cfg.a2 = parse_number(full, value);
    else if (is("system", "omega")) cfg.omega = parse_number(full, value);
    else if (is("system", "x0")) cfg.x0 = parse_vector(full, value);
    else if (is("filters", "lambda1")) cfg.lambda1 = parse_number(full, value);
    else if (is("filters", "lambda2")) cfg.lambda2 = parse_number(full, value);
    else if (is("filters", "lambda3")) cfg.lambda3 = parse_number(full, value);
    else if (is("gains", "gamma1")) cfg.gamma1 = parse_number(full, value);
    else if (is("gains", "gamma2")) cfg.gamma2 = parse_number(full, value);
    else if (is("gains", "gamma3")) cfg.gamma3 = parse_number(full, value);
    else if (is("gains", "gamma_w")) cfg.gamma_w = parse_number(full, value);
    else if (is("run", "h")) cfg.h = parse_number(full, value);
    else if (is("run", "horizon")) cfg.horizon = parse_number(full, value);
    else if (is("run", "mu")) cfg.mu = parse_number(full, value);
    else if (is("run", "v_floor")) cfg.v_floor = parse_number(full, value);
    else if (is("run", "t_switch")) cfg.t_switch = parse_number(full, value);
    else if (is("run", "decimation")) cfg.decimation = static_cast<int>(parse_number(full, value));
    else if (is("run", "oracle_theta")) cfg.oracle_theta = parse_bool(full, value);
    else if (is("run", "omega_known")) cfg.omega_known = parse_bool(full, value);
    else if (is("run", "freeze_omega_at_switch")) cfg.freeze_omega_at_switch = parse_bool(full, value);
    else if (is("run", "observer_integrate_from_switch"))
        cfg.observer_integrate_from_switch = parse_bool(full, value);
    else if (is("run", "out")) cfg.out = value;
    else throw ConfigError("unknown key: " + full);
}

}  // namespace

void validate(const RunConfig& cfg) {
    if (!(cfg.h > 0.0)) throw ConfigError("h must be positive");
    if (!(cfg.d >= 0.0)) throw ConfigError("d must be non-negative");
    if (!(cfg.horizon > cfg.d)) throw ConfigError("horizon must exceed the delay d");
    if (!(cfg.omega > 0.0)) throw ConfigError("omega must be positive");
    if (!(cfg.lambda1 > 0.0)) throw ConfigError("lambda1 must be positive");
    if (!(cfg.lambda2 > 0.0)) throw ConfigError("lambda2 must be positive");
    if (!(cfg.lambda3 > 0.0)) throw ConfigError("lambda3 must be positive");
    if (!(cfg.gamma1 > 0.0)) throw ConfigError("gamma1 must be positive");
    if (!(cfg.gamma2 > 0.0)) throw ConfigError("gamma2 must be positive");
    if (!(cfg.gamma3 > 0.0)) throw ConfigError("gamma3 must be positive");
    if (!(cfg.gammaw() > 0.0)) throw ConfigError("gamma_w must be positive");
    if (!(cfg.mu > 0.0 && cfg.mu < 1.0)) throw ConfigError("mu must lie in (0,1)");
    if (!(cfg.v_floor > 0.0)) throw ConfigError("v_floor must be positive");
    if (!(cfg.t_switch >= 0.0)) throw ConfigError("t_switch must be non-negative");
    if (cfg.decimation < 1) throw ConfigError("decimation must be at least 1");
    if (cfg.x0.size() != 2) throw ConfigError("x0 must have exactly 2 entries");
}

RunConfig load_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    std::string section;
    while (std::getline(is, line)) {
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("malformed section header: " + line);
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value, got: " + line);
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        std::string sec = section;
        const auto dotted = key.find('.');
        if (dotted != std::string::npos) {
            sec = key.substr(0, dotted);
            key = key.substr(dotted + 1);
        }
        apply(cfg, sec, key, value);
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return load_config(os.str());
}

std::string default_output_name(const std::string& scenario, const RunConfig& cfg) {
    return scenario + "_d" + fmt_g(cfg.d) + "_g1_" + fmt_g(cfg.gamma1) + "_g2_" + fmt_g(cfg.gamma2) +
           "_g3_" + fmt_g(cfg.gamma3) + ".csv";
}

void set_gain(RunConfig& cfg, const std::string& name, double value) {
    if (name == "gamma1") cfg.gamma1 = value;
    else if (name == "gamma2") cfg.gamma2 = value;
    else if (name == "gamma3") cfg.gamma3 = value;
    else if (name == "gamma_w") cfg.gamma_w = value;
    else if (name == "lambda1") cfg.lambda1 = value;
    else if (name == "lambda2") cfg.lambda2 = value;
    else if (name == "lambda3") cfg.lambda3 = value;
    else throw ConfigError("unknown gain: " + name);
    validate(cfg);
}

}  // namespace ltvobs
