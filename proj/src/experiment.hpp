#pragma once

#include "config_text.hpp"
#include "dressed_two.hpp"
#include "propagator.hpp"
#include "svg_plot.hpp"

#include <string>
#include <vector>

// Config-driven experiment runner: named presets, sweep execution over a
// worker pool, and deterministic CSV / manifest / SVG artifacts.

namespace xsim {

struct ResultRow {
  double sweep_value = 0.0;
  std::string noise_marker;
  double f = 0.0;
  double f2 = 0.0;
  double m = 0.0;
  double sem = 0.0;
  double wall_time_s = 0.0;
};

struct PresetInfo {
  std::string name;
  std::string description;
};

// sorted by name
const std::vector<PresetInfo>& experiment_presets();
KeyValueMap preset_config(const std::string& name);

struct ExperimentOutput {
  KeyValueMap config; // resolved configuration the run used
  std::vector<ResultRow> rows;
  std::vector<std::string> warnings;
  PlotSpec plot;
  // extra artifacts beside results.csv/manifest.json/plot.svg: (filename, content)
  std::vector<std::pair<std::string, std::string>> extra_files;
  double wall_time_s = 0.0;
};

ExperimentOutput run_experiment(const KeyValueMap& config);
std::string render_results_csv(const std::vector<ResultRow>& rows, bool with_timing);
std::string render_manifest(const ExperimentOutput& out, bool with_timing);
// writes results.csv, manifest.json, plot.svg and any extra files; creates out_dir
void write_outputs(const ExperimentOutput& out, const std::string& out_dir);

// --- building blocks the runners and the acceptance suite share ---

// Full two-ion entangling-gate run for one heating rate.
struct MsGateRun {
  double heating_rate = 0.0;
  std::vector<double> times;
  std::vector<double> f2_target; // vs (|DD> + i|0'0'>)/sqrt(2)
  std::vector<double> f2_dd;
  std::vector<double> f2_zpzp;
  std::vector<double> re_rho, im_rho; // rho_{DD,0'0'}
  double end_f2 = 0.0;  // at t = T exactly
  double peak_f2 = 0.0; // max over the final oscillation period before T
  bool truncation_saturated = false;
  double max_trace_drift = 0.0;
};
MsGateRun run_ms_gate(const MsPlan& plan, const TrapConfig& trap, double heating_rate,
                      double dt, double record_dt = 0.5e-6, double fine_window = 12.0e-6);

// Oscillation structure of an F^2(t) window.
struct OscillationStats {
  double amplitude = 0.0; // max - min over the window
  double period = 0.0;    // mean spacing of the dips, seconds
  double max_abs_dev_from = 0.0; // filled by compare_with_analytic
};
OscillationStats analyze_oscillation(const std::vector<double>& times,
                                     const std::vector<double>& f2, double window_start);
double max_deviation_from_oscillation(const std::vector<double>& times,
                                      const std::vector<double>& f2, double window_start,
                                      double omega_g, double q, double nu);

// Dressed-state lifetime estimate from a short-horizon ensemble.
struct LifetimeFit {
  double t1 = 0.0;      // seconds
  double t1_low = 0.0;  // 95% band from the slope standard error
  double t1_high = 0.0; // may be +inf
  double slope = 0.0;
  double slope_stderr = 0.0;
};
LifetimeFit fit_exponential_lifetime(const std::vector<double>& times,
                                     const std::vector<double>& survival);

} // namespace xsim
