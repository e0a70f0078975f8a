#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ltvobs/config.hpp"
#include "ltvobs/drem_id.hpp"
#include "ltvobs/freq_id.hpp"
#include "ltvobs/gpebo.hpp"
#include "ltvobs/plant.hpp"
#include "ltvobs/trace.hpp"

namespace ltvobs {

/// Full-rate view of one pipeline step, handed to an optional callback.
/// Carries the per-step regression samples (which the decimated trace does
/// not keep) plus read-only access to every module state.
struct StepProbe {
    double t = 0.0;
    bool estimators_active = false;
    double V = 0.0;
    double q = 0.0;
    double phi = 0.0;
    double Y1 = 0.0;
    double psi11 = 0.0;
    double psi21 = 0.0;
    double theta_ref = 0.0;  // parameter signal handed to the observer this step
    const PlantState* plant = nullptr;
    const FreqIdState* freq = nullptr;
    const DremState* drem = nullptr;
    const GpeboState* gpebo = nullptr;  // null before the observer exists
};

using ProbeFn = std::function<void(const StepProbe&)>;

/// The bundled benchmark system with the configured harmonic term, delay and
/// initial state.
SystemSpec benchmark_system(const RunConfig& cfg);

/// Simulates the plant and all three estimation stages on one shared grid.
/// Deterministic: identical configs produce identical traces.
std::vector<TraceRecord> run_pipeline(const RunConfig& cfg, const ProbeFn& probe = {});

/// Ground-truth generator: integrates only the plant, refined `refine` times
/// relative to cfg.h, and logs on the same decimated grid as run_pipeline.
std::vector<TraceRecord> oracle_simulate(const RunConfig& cfg, int refine = 100);
std::vector<TraceRecord> oracle_simulate(const SystemSpec& sys, const RunConfig& cfg,
                                         int refine = 100);

/// First sampled time from which |err| enters the band and stays within it
/// through the end of the trace; +infinity when it never settles. Transient
/// crossings (the raw error sweeps through zero during the startup spike) do
/// not count as entering.
double band_entry_time(const std::vector<double>& t, const std::vector<double>& err, double band);

std::vector<double> times_of(const std::vector<TraceRecord>& records);

struct SweepOutcome {
    double value = 0.0;
    std::string csv_path;
    std::vector<TraceRecord> records;
};

/// Runs one config per gain value (in parallel, each run isolated) and
/// optionally writes the per-run CSVs into out_dir.
std::vector<SweepOutcome> run_sweep(const RunConfig& base, const std::string& gain,
                                    const std::vector<double>& values, const std::string& out_dir,
                                    bool write_files);

struct FigureSpec {
    int id = 0;
    double d = 0.0;
    std::string sweep_gain;  // empty for single-run figures
    std::vector<double> sweep_values;
    bool omega_known = false;
    double gamma2_override = -1.0;  // <= 0 keeps the base value
    bool restart_observer = false;  // integrate xi/Phi from t_switch
    std::string quantity;  // omega_err | a1_err | a2_err | theta_err | ehat | states
    std::string caption;
};

const std::vector<FigureSpec>& figure_table();

struct FigureOutput {
    std::vector<std::string> csv_paths;
    std::vector<std::string> svg_paths;
};

FigureOutput run_figure(int id, const RunConfig& base, const std::string& out_dir, bool plot);

}  // namespace ltvobs
