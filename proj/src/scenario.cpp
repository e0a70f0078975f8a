#include "ltvobs/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>

#include "ltvobs/plot.hpp"

namespace ltvobs {

SystemSpec benchmark_system(const RunConfig& cfg) {
    validate(cfg);
    SystemSpec sys;
    sys.n = 2;
    sys.A = [](double t) {
        return Mat(2, 2,
                   {0.0, 1.0 + 0.1 * std::sin(t),  //
                    -2.0, -1.0 + 0.5 * std::cos(2.0 * t)});
    };
    sys.B = [](double) { return Vec{0.0, 1.0}; };
    sys.u = [](double t) { return 2.0 * std::sin(t); };
    sys.a1 = cfg.a1;
    sys.a2 = cfg.a2;
    sys.omega = cfg.omega;
    sys.d = cfg.d;
    sys.x0 = cfg.x0;
    return sys;
}

namespace {

TraceRecord make_record(double t, const SystemSpec& sys, const PlantState& plant,
                        const FreqIdState& freq, const DremState& drem, const GpeboState* gp,
                        double theta_hat_signal, double omega_eff, bool measured) {
    TraceRecord r;
    r.t = t;
    r.x = plant.x;
    r.y = measured ? measure(plant, sys.d) : Vec(sys.n, 0.0);
    if (gp) {
        r.x_hat = state_estimate(*gp).x_hat;
        r.P = gp->P_last;
        r.w = gp->w;
        r.w_c = clipped_weight(*gp);
        r.tc_reached = gp->tc_reached;
    } else {
        r.x_hat = Vec(sys.n, 0.0);
        r.w = 1.0;
        r.w_c = 0.0;
    }
    r.theta = theta_true(sys, t);
    r.theta_hat = theta_hat_signal;
    r.theta_err = r.theta - r.theta_hat;
    r.omega_hat = omega_eff;
    r.k_hat = freq.k_hat;
    r.a1_hat = drem.a_hat[0];
    r.a2_hat = drem.a_hat[1];
    r.Delta = drem.Delta;
    r.v_floor_active = freq.v_floor_active;
    return r;
}

}  // namespace

std::vector<TraceRecord> run_pipeline(const RunConfig& cfg, const ProbeFn& probe) {
    const SystemSpec sys = benchmark_system(cfg);
    const double h = cfg.h;
    const auto total = static_cast<std::uint64_t>(std::llround(cfg.horizon / h));
    const auto switch_step = static_cast<std::uint64_t>(std::llround(cfg.t_switch / h));

    PlantState plant = plant_init(sys, h);
    FreqIdState freq = make_freq_id(cfg.lambda1, cfg.gamma1, cfg.v_floor);
    DremState drem = make_drem(sys.n, cfg.lambda2, cfg.lambda3, cfg.gamma2);
    std::optional<GpeboState> gp;
    if (!cfg.observer_integrate_from_switch)
        gp.emplace(make_gpebo(sys.n, h, sys.d, cfg.gamma3, cfg.gammaw(), cfg.mu, 0.0));

    // time from which the identification half of the observer may run
    const double id_start = cfg.observer_integrate_from_switch
                                ? cfg.t_switch + sys.d
                                : std::max(sys.d, cfg.t_switch);

    double omega_frozen = -1.0;
    auto effective_omega = [&]() {
        if (cfg.omega_known) return cfg.omega;
        if (omega_frozen >= 0.0) return omega_frozen;
        return omega_hat(freq.k_hat);
    };

    std::vector<TraceRecord> records;
    records.reserve(total / static_cast<std::uint64_t>(cfg.decimation) + 2);
    records.push_back(make_record(0.0, sys, plant, freq, drem, gp ? &*gp : nullptr,
                                  cfg.oracle_theta ? theta_true(sys, 0.0)
                                                   : theta_hat(drem.a_hat, effective_omega(), 0.0),
                                  effective_omega(), sys.d <= 1e-12));

    for (std::uint64_t k = 0; k < total; ++k) {
        const double t0 = h * static_cast<double>(k);
        const double t1 = h * static_cast<double>(k + 1);

        if (cfg.freeze_omega_at_switch && omega_frozen < 0.0 && k >= switch_step && !cfg.omega_known)
            omega_frozen = omega_hat(freq.k_hat);

        // parameter signal handed to the observer over [t0, t1]: harmonic
        // shape with the coefficients held at their t0 values
        const double om0 = effective_omega();
        const double a1_0 = drem.a_hat[0];
        const double a2_0 = drem.a_hat[1];
        std::function<double(double)> theta_fn;
        if (cfg.oracle_theta)
            theta_fn = [&sys](double tau) { return theta_true(sys, tau); };
        else
            theta_fn = [a1_0, a2_0, om0](double tau) {
                return a1_0 * std::sin(om0 * tau) + a2_0 * std::cos(om0 * tau);
            };

        if (cfg.observer_integrate_from_switch && !gp && k == switch_step)
            gp.emplace(make_gpebo(sys.n, h, sys.d, cfg.gamma3, cfg.gammaw(), cfg.mu, t0));

        const bool active = t1 >= sys.d - 1e-9;
        StepProbe pr;
        pr.t = t1;
        pr.estimators_active = active;
        pr.theta_ref = theta_fn(t1);
        try {
            if (gp) gpebo_step(*gp, sys.A, sys.B, sys.u, theta_fn, t0, h);
            plant_step(sys, plant, h);

            if (active) {
                const Vec y = measure(plant, sys.d);
                const double td = t1 - sys.d;
                const Mat A_d = sys.A(td);
                const Vec B_d = sys.B(td);
                const double u_d = sys.u(td);

                const double chi_omega = effective_omega();  // pre-update snapshot
                const RegressorSample rs = freq_id_step(freq, y, A_d, B_d, u_d, t1, h);
                pr.V = compute_V(y);
                pr.q = rs.q;
                pr.phi = rs.phi;

                const Chi chi = chi_eval(chi_omega, t1, sys.d);
                const RegressionRow row = build_regression(drem, y, A_d, B_d, u_d, chi, h, t1);
                pr.Y1 = row.Y[0];
                pr.psi11 = row.psi1[0];
                pr.psi21 = row.psi2[0];
                drem_step(drem, row.Y[0], row.psi1[0], row.psi2[0], h, t1);

                if (gp && t1 >= id_start - 1e-9) {
                    const DelayedRegression dr = delayed_regression(*gp, y, t1, sys.d);
                    e_gradient_step(*gp, dr.P, dr.R, h);
                    finite_time_update(*gp, dr.P, h);
                }
            } else {
                freq.v_floor_active = false;
            }
        } catch (const DivergenceError& e) {
            // inner integrations run on local step time; restamp with the
            // simulation instant so the abort names when it happened
            throw DivergenceError(e.quantity(), t1);
        }

        if (probe) {
            pr.plant = &plant;
            pr.freq = &freq;
            pr.drem = &drem;
            pr.gpebo = gp ? &*gp : nullptr;
            probe(pr);
        }

        if ((k + 1) % static_cast<std::uint64_t>(cfg.decimation) == 0) {
            const double om_now = effective_omega();
            const double th_hat = cfg.oracle_theta ? theta_true(sys, t1)
                                                   : theta_hat(drem.a_hat, om_now, t1);
            records.push_back(make_record(t1, sys, plant, freq, drem, gp ? &*gp : nullptr, th_hat,
                                          om_now, active));
        }
    }
    return records;
}

std::vector<TraceRecord> oracle_simulate(const RunConfig& cfg, int refine) {
    return oracle_simulate(benchmark_system(cfg), cfg, refine);
}

std::vector<TraceRecord> oracle_simulate(const SystemSpec& sys, const RunConfig& cfg, int refine) {
    validate(cfg);
    if (refine < 1) throw ConfigError("refine must be at least 1");
    const double h = cfg.h;
    const double hf = h / refine;
    const auto total = static_cast<std::uint64_t>(std::llround(cfg.horizon / h));

    auto rhs = [&sys](double tau, const Vec& x) {
        Vec dx = sys.A(tau) * x;
        const double th = theta_true(sys, tau);
        const double ut = sys.u(tau);
        const Vec b = sys.B(tau);
        for (std::size_t i = 0; i < dx.size(); ++i) dx[i] += th * x[i] + b[i] * ut;
        return dx;
    };

    DelayLine history(h, sys.d + 1.0);
    Vec x = sys.x0;
    history.push(0.0, x);

    std::vector<TraceRecord> records;
    records.reserve(total / static_cast<std::uint64_t>(cfg.decimation) + 2);
    auto log_at = [&](double t) {
        TraceRecord r;
        r.t = t;
        r.x = x;
        r.y = (t >= sys.d - 1e-9) ? history.sample(t - sys.d) : Vec(sys.n, 0.0);
        r.x_hat = Vec(sys.n, 0.0);
        r.theta = theta_true(sys, t);
        r.theta_err = r.theta;
        records.push_back(std::move(r));
    };
    log_at(0.0);

    for (std::uint64_t k = 0; k < total; ++k) {
        const double t0 = h * static_cast<double>(k);
        for (int j = 0; j < refine; ++j) x = rk4_step(rhs, t0 + hf * j, x, hf);
        if (!all_finite(x)) throw DivergenceError("oracle plant state", t0 + h);
        const double t1 = h * static_cast<double>(k + 1);
        history.push(t1, x);
        if ((k + 1) % static_cast<std::uint64_t>(cfg.decimation) == 0) log_at(t1);
    }
    return records;
}

std::vector<double> times_of(const std::vector<TraceRecord>& records) {
    std::vector<double> t;
    t.reserve(records.size());
    for (const auto& r : records) t.push_back(r.t);
    return t;
}

double band_entry_time(const std::vector<double>& t, const std::vector<double>& err, double band) {
    if (t.size() != err.size() || t.empty()) throw DimensionError("band_entry_time: bad input");
    std::size_t i = t.size();
    while (i > 0 && std::abs(err[i - 1]) <= band) --i;
    if (i == t.size()) return std::numeric_limits<double>::infinity();
    return t[i];
}

std::vector<SweepOutcome> run_sweep(const RunConfig& base, const std::string& gain,
                                    const std::vector<double>& values, const std::string& out_dir,
                                    bool write_files) {
    std::vector<std::future<SweepOutcome>> futures;
    for (double v : values) {
        futures.push_back(std::async(std::launch::async, [&, v]() {
            RunConfig cfg = base;
            set_gain(cfg, gain, v);
            SweepOutcome out;
            out.value = v;
            out.records = run_pipeline(cfg);
            if (write_files) {
                std::string name = default_output_name("sweep_" + gain, cfg);
                out.csv_path = out_dir.empty() ? name : out_dir + "/" + name;
                write_csv(out.records, out.csv_path);
            }
            return out;
        }));
    }
    std::vector<SweepOutcome> outs;
    outs.reserve(values.size());
    for (auto& f : futures) outs.push_back(f.get());
    return outs;
}

const std::vector<FigureSpec>& figure_table() {
    static const std::vector<double> gains{1.0, 10.0, 100.0};
    static const std::vector<FigureSpec> table{
        {1, 0.0, "gamma1", gains, false, -1.0, false, "omega_err",
         "frequency error for gamma1 sweep, no delay"},
        {2, 0.0, "gamma2", gains, true, -1.0, false, "a1_err",
         "a1 error, omega known, gamma2 sweep, no delay"},
        {3, 0.0, "gamma2", gains, true, -1.0, false, "a2_err",
         "a2 error, omega known, gamma2 sweep, no delay"},
        {4, 0.0, "gamma2", gains, false, -1.0, false, "a1_err",
         "a1 error, omega estimated, gamma2 sweep, no delay"},
        {5, 0.0, "gamma2", gains, false, -1.0, false, "a2_err",
         "a2 error, omega estimated, gamma2 sweep, no delay"},
        {6, 0.0, "gamma2", gains, false, -1.0, false, "theta_err",
         "theta error for gamma2 sweep, no delay"},
        {7, 2.0, "gamma1", gains, false, -1.0, false, "omega_err",
         "frequency error for gamma1 sweep, delayed"},
        {8, 2.0, "gamma2", gains, false, -1.0, false, "a1_err",
         "a1 error, omega estimated, gamma2 sweep, delayed"},
        {9, 2.0, "gamma2", gains, false, -1.0, false, "a2_err",
         "a2 error, omega estimated, gamma2 sweep, delayed"},
        {10, 2.0, "gamma2", gains, false, -1.0, false, "theta_err",
         "theta error for gamma2 sweep, delayed"},
        // the state-estimation figures follow the fast-identification setup:
        // the parameter settles well before the observer switches on at 5 s
        {11, 2.0, "", {}, false, 100.0, true, "ehat",
         "initial-condition estimates, gradient and finite-time, delayed"},
        {12, 2.0, "", {}, false, 100.0, true, "states",
         "state vector and finite-time estimate, delayed"},
    };
    return table;
}

namespace {

std::vector<double> quantity_series(const std::vector<TraceRecord>& rs, const RunConfig& cfg,
                                    const std::string& quantity) {
    std::vector<double> out;
    out.reserve(rs.size());
    for (const auto& r : rs) {
        if (quantity == "omega_err") out.push_back(cfg.omega - r.omega_hat);
        else if (quantity == "a1_err") out.push_back(cfg.a1 - r.a1_hat);
        else if (quantity == "a2_err") out.push_back(cfg.a2 - r.a2_hat);
        else if (quantity == "theta_err") out.push_back(r.theta_err);
        else throw ConfigError("unknown figure quantity: " + quantity);
    }
    return out;
}

std::string join_dir(const std::string& dir, const std::string& name) {
    return dir.empty() ? name : dir + "/" + name;
}

}  // namespace

FigureOutput run_figure(int id, const RunConfig& base, const std::string& out_dir, bool plot) {
    const FigureSpec* spec = nullptr;
    for (const auto& f : figure_table())
        if (f.id == id) spec = &f;
    if (!spec) throw ConfigError("figure id must be in 1..12");

    RunConfig cfg = base;
    cfg.d = spec->d;
    cfg.omega_known = spec->omega_known;
    if (spec->gamma2_override > 0.0) cfg.gamma2 = spec->gamma2_override;
    if (spec->restart_observer) cfg.observer_integrate_from_switch = true;
    validate(cfg);

    FigureOutput out;
    const std::string tag = "fig" + std::to_string(id);

    if (!spec->sweep_gain.empty()) {
        auto outcomes = run_sweep(cfg, spec->sweep_gain, spec->sweep_values, "", false);
        std::vector<PlotSeries> series;
        for (const auto& oc : outcomes) {
            RunConfig c = cfg;
            set_gain(c, spec->sweep_gain, oc.value);
            const std::string path = join_dir(out_dir, default_output_name(tag, c));
            write_csv(oc.records, path);
            out.csv_paths.push_back(path);
            char label[64];
            std::snprintf(label, sizeof(label), "%s=%g", spec->sweep_gain.c_str(), oc.value);
            series.push_back({label, times_of(oc.records), quantity_series(oc.records, cfg, spec->quantity)});
        }
        if (plot) {
            const std::string svg = join_dir(out_dir, tag + ".svg");
            write_svg_chart(svg, spec->caption, "t [s]", spec->quantity, series);
            out.svg_paths.push_back(svg);
        }
        return out;
    }

    if (spec->quantity == "ehat") {
        // full-rate estimates of the initial condition, gradient and
        // finite-time; these live outside the fixed trace schema
        std::vector<double> ts, e1, e2, f1, f2;
        auto probe = [&](const StepProbe& p) {
            if (!p.gpebo) return;
            const Vec ef = e_finite_time(*p.gpebo);
            ts.push_back(p.t);
            e1.push_back(p.gpebo->e_hat[0]);
            e2.push_back(p.gpebo->e_hat[1]);
            f1.push_back(ef[0]);
            f2.push_back(ef[1]);
        };
        auto records = run_pipeline(cfg, probe);
        const std::string main_path = join_dir(out_dir, default_output_name(tag, cfg));
        write_csv(records, main_path);
        out.csv_paths.push_back(main_path);

        const std::string aux_path = join_dir(out_dir, tag + "_ehat.csv");
        {
            std::ofstream os(aux_path);
            if (!os) throw IoError("cannot open for writing: " + aux_path);
            os << "t,ehat1,ehat2,eft1,eft2\n";
            char buf[200];
            for (std::size_t i = 0; i < ts.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%.12g\n", ts[i], e1[i],
                              e2[i], f1[i], f2[i]);
                os << buf;
            }
        }
        out.csv_paths.push_back(aux_path);
        if (plot) {
            const std::string svg = join_dir(out_dir, tag + ".svg");
            write_svg_chart(svg, spec->caption, "t [s]", "initial-condition estimates",
                            {{"ehat1", ts, e1}, {"ehat2", ts, e2}, {"eft1", ts, f1}, {"eft2", ts, f2}});
            out.svg_paths.push_back(svg);
        }
        return out;
    }

    // states figure
    auto records = run_pipeline(cfg);
    const std::string path = join_dir(out_dir, default_output_name(tag, cfg));
    write_csv(records, path);
    out.csv_paths.push_back(path);
    if (plot) {
        const auto ts = times_of(records);
        std::vector<double> x1, x2, xh1, xh2;
        for (const auto& r : records) {
            x1.push_back(r.x[0]);
            x2.push_back(r.x[1]);
            xh1.push_back(r.x_hat[0]);
            xh2.push_back(r.x_hat[1]);
        }
        const std::string svg = join_dir(out_dir, tag + ".svg");
        write_svg_chart(svg, spec->caption, "t [s]", "state",
                        {{"x1", ts, x1}, {"xhat1", ts, xh1}, {"x2", ts, x2}, {"xhat2", ts, xh2}});
        out.svg_paths.push_back(svg);
    }
    return out;
}

}  // namespace ltvobs
