#include "experiment.hpp"

#include "regimes.hpp"
#include "units.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace xsim {

namespace {

using nlohmann::json;
const Complex kIm(0.0, 1.0);

std::string fmt12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int default_workers() {
  if (const char* env = std::getenv("XSIM_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return 1;
}

std::vector<double> sweep_values(const KeyValueMap& cfg) {
  if (cfg.count("sweep_values")) return get_double_list(cfg, "sweep_values");
  if (cfg.count("sweep_log")) {
    std::vector<std::string> f;
    const std::string s = get_string_or(cfg, "sweep_log", "");
    size_t p = 0;
    while (true) {
      const size_t c = s.find(':', p);
      f.push_back(s.substr(p, c == std::string::npos ? c : c - p));
      if (c == std::string::npos) break;
      p = c + 1;
    }
    if (f.size() != 3) throw std::invalid_argument("config: sweep_log must be lo:hi:n");
    const double lo = std::stod(f[0]), hi = std::stod(f[1]);
    const int n = std::stoi(f[2]);
    if (lo <= 0 || hi <= lo || n < 2) throw std::invalid_argument("config: bad sweep_log range");
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
      v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return v;
  }
  throw std::invalid_argument("config: sweep_values or sweep_log required");
}

std::string marker_color(const std::string& marker) {
  if (marker.rfind("black", 0) == 0) return "#000000";
  if (marker.rfind("red", 0) == 0) return "#d62728";
  if (marker.rfind("yellow", 0) == 0) return "#bfa500";
  if (marker.rfind("green", 0) == 0) return "#2ca02c";
  if (marker.rfind("blue", 0) == 0) return "#1f77b4";
  return "#555555";
}

PureState superposition_input() {
  return PureState((state_d() + state_zero_prime()) / std::sqrt(2.0));
}

PureState input_state(const KeyValueMap& cfg) {
  const std::string kind = get_string_or(cfg, "input", "superposition");
  if (kind == "superposition") return superposition_input();
  if (kind == "d") return PureState(state_d());
  if (kind == "b") return PureState(state_b());
  if (kind == "zero-prime") return PureState(state_zero_prime());
  throw std::invalid_argument("config: unknown input '" + kind + "'");
}

IntegratorConfig::Method method_from(const KeyValueMap& cfg) {
  const std::string m = get_string_or(cfg, "method", "rk4");
  if (m == "rk4") return IntegratorConfig::Method::kRk4;
  if (m == "midpoint-exp") return IntegratorConfig::Method::kMidpointExponential;
  throw std::invalid_argument("config: unknown method '" + m + "'");
}

std::unique_ptr<SingleIonDrive> make_drive(const KeyValueMap& cfg, double omega) {
  const std::string gate = get_string_or(cfg, "gate", "basic");
  const QubitKind kind = get_string_or(cfg, "qubit", "D") == "B" ? QubitKind::kB : QubitKind::kD;
  if (gate == "basic") {
    const double omega_g = from_khz(get_double(cfg, "omega_g_khz"));
    const double duration = ms_to_s(get_double_or(cfg, "duration_ms", 0.0));
    return std::make_unique<BasicGateDrive>(kind, omega, omega_g, duration);
  }
  if (gate == "transfer") {
    const double rate = rad_per_ms_to_rad_per_s(get_double(cfg, "rate_rad_per_ms"));
    return std::make_unique<TransferDrive>(kind, omega, rate);
  }
  if (gate == "sigma-z") {
    const double rate = rad_per_ms_to_rad_per_s(get_double(cfg, "rate_rad_per_ms"));
    return std::make_unique<SigmaZDrive>(get_double(cfg, "x_rad"), omega, rate);
  }
  if (gate == "dressing-only") {
    const double duration = ms_to_s(get_double(cfg, "duration_ms"));
    return std::make_unique<DressingOnlyDrive>(kind, omega, duration);
  }
  throw std::invalid_argument("config: unknown gate '" + gate + "'");
}

EnsembleConfig ensemble_config(const KeyValueMap& cfg, const SingleIonDrive& drive,
                               int n_traj) {
  EnsembleConfig ec;
  ec.n_traj = n_traj;
  ec.base_seed = static_cast<std::uint64_t>(get_int_or(cfg, "base_seed", 20140915));
  ec.workers = static_cast<int>(get_int_or(cfg, "workers", default_workers()));
  ec.noise_step = 1.0e-6 * get_double_or(cfg, "noise_step_us", 1.0);
  ec.integrator.method = method_from(cfg);
  const double scale = get_double_or(cfg, "dt_scale", 0.01);
  double dt = scale / drive.max_angular_frequency();
  if (cfg.count("dt_ns")) dt = 1.0e-9 * get_double(cfg, "dt_ns");
  ec.integrator.dt = dt;
  ec.integrator.max_omega = drive.max_angular_frequency();
  ec.integrator.record_stride =
      static_cast<int>(get_int_or(cfg, "record_stride", 1 << 30));
  return ec;
}

// --- single-qubit sweep experiments (fig4 family) ---

void run_single_qubit(const KeyValueMap& cfg, ExperimentOutput& out) {
  const auto values = sweep_values(cfg);
  const auto markers = get_string_list(cfg, "noise");
  const PureState psi0 = input_state(cfg);
  const long long traj_override = get_int_or(cfg, "trajectories", 0);

  std::map<std::string, PlotSeries> series;
  for (double v : values) {
    const double omega = from_khz(v);
    auto drive = make_drive(cfg, omega);
    for (const std::string& marker : markers) {
      const NoisePreset& preset = noise_preset(marker);
      int n_traj = preset.runs;
      if (traj_override > 0 && preset.sd_mu > 0) n_traj = static_cast<int>(traj_override);
      const auto t0 = std::chrono::steady_clock::now();
      EnsembleResult res = run_ensemble(*drive, psi0, preset, ensemble_config(cfg, *drive, n_traj));
      const auto t1 = std::chrono::steady_clock::now();
      ResultRow row;
      row.sweep_value = v;
      row.noise_marker = marker;
      row.f = res.end_fidelity();
      row.f2 = row.f * row.f;
      row.m = res.end_merit();
      row.sem = res.end_f2_sem;
      row.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
      out.rows.push_back(row);
      auto& s = series[marker];
      s.label = marker;
      s.color = marker_color(marker);
      s.dashed = marker.find("dashed") != std::string::npos;
      s.x.push_back(v);
      s.y.push_back(row.m);
    }
  }
  out.plot.title = "merit after one pulse vs dressing strength";
  out.plot.x_label = "Omega / 2pi (kHz)";
  out.plot.y_label = "M = log10(1 - F^2)";
  out.plot.log_x = true;
  for (const std::string& marker : markers) out.plot.series.push_back(series[marker]);
}

// --- two-ion entangling gate ---

MsPlan plan_from_config(const KeyValueMap& cfg, TrapConfig& trap) {
  trap.ion_mass = kYb171Mass;
  trap.magnetic_gradient = get_double_or(cfg, "gradient_t_per_m", 46.0);
  trap.nu = from_khz(get_double_or(cfg, "nu_khz", 500.0));
  trap.fock_dim = static_cast<int>(get_int_or(cfg, "fock_dim", 8));
  trap.initial_phonons = static_cast<int>(get_int_or(cfg, "initial_phonons", 0));
  double eta = get_double_or(cfg, "eta", 0.0);
  if (eta <= 0.0) eta = effective_eta(trap);
  DressingParams dress;
  dress.omega = from_khz(get_double_or(cfg, "omega_khz", 20.0));
  dress.delta_0 = from_khz(get_double_or(cfg, "delta0_khz", 2.0));
  dress.omega_z = from_khz(get_double_or(cfg, "omega_z_khz", 10.0));
  dress.delta_z = from_khz(get_double_or(cfg, "delta_z_khz", 1000.0));
  const int r = static_cast<int>(get_int_or(cfg, "r", 1));
  return ms_plan(r, eta, from_khz(get_double_or(cfg, "omega_g_khz", 100.0)), dress);
}

void run_ms_gate_experiment(const KeyValueMap& cfg, ExperimentOutput& out) {
  TrapConfig trap;
  const MsPlan plan = plan_from_config(cfg, trap);
  const auto heating = cfg.count("heating_rates") ? get_double_list(cfg, "heating_rates")
                                                  : std::vector<double>{0.0, 10.0, 100.0};
  const double dt = 1.0e-9 * get_double_or(cfg, "dt_ns", 5.0);
  const double record_dt = 1.0e-6 * get_double_or(cfg, "record_dt_us", 0.5);
  const double fine_window = 1.0e-6 * get_double_or(cfg, "fine_window_us", 12.0);

  std::string series_csv = "heating_rate,t_s,F2_target,F2_DD,F2_0p0p,re_rho_DD_0p0p,im_rho_DD_0p0p\n";
  for (double rate : heating) {
    const auto t0 = std::chrono::steady_clock::now();
    MsGateRun run = run_ms_gate(plan, trap, rate, dt, record_dt, fine_window);
    const auto t1 = std::chrono::steady_clock::now();
    ResultRow row;
    row.sweep_value = rate;
    row.noise_marker = "black";
    row.f2 = run.peak_f2;
    row.f = std::sqrt(std::max(0.0, run.peak_f2));
    row.m = merit(row.f);
    row.sem = 0.0;
    row.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
    out.rows.push_back(row);
    if (run.truncation_saturated)
      out.warnings.push_back("fock truncation saturated at heating rate " + fmt12(rate));
    for (size_t i = 0; i < run.times.size(); ++i) {
      series_csv += fmt12(rate);
      series_csv += ",";
      series_csv += fmt12(run.times[i]);
      series_csv += ",";
      series_csv += fmt12(run.f2_target[i]);
      series_csv += ",";
      series_csv += fmt12(run.f2_dd[i]);
      series_csv += ",";
      series_csv += fmt12(run.f2_zpzp[i]);
      series_csv += ",";
      series_csv += fmt12(run.re_rho[i]);
      series_csv += ",";
      series_csv += fmt12(run.im_rho[i]);
      series_csv += "\n";
    }
    PlotSeries s;
    s.label = "heating " + fmt12(rate) + "/s";
    s.color = rate == 0 ? "#000000" : (rate <= 10 ? "#1f77b4" : "#d62728");
    for (size_t i = 0; i < run.times.size(); ++i) {
      s.x.push_back(run.times[i] * 1e3);
      s.y.push_back(run.f2_target[i]);
    }
    out.plot.series.push_back(std::move(s));
  }
  out.extra_files.emplace_back("series.csv", series_csv);
  out.plot.title = "two-ion gate: squared fidelity of the entangled target";
  out.plot.x_label = "t (ms)";
  out.plot.y_label = "F^2";
}

// --- dressed-state lifetime ---

void run_lifetime_experiment(const KeyValueMap& cfg, ExperimentOutput& out) {
  const double omega = from_khz(get_double_or(cfg, "omega_khz", 36.5));
  const double horizon = ms_to_s(get_double_or(cfg, "horizon_ms", 50.0));
  NoisePreset preset;
  preset.marker = "custom";
  preset.sd_mu = from_hz(get_double_or(cfg, "sd_mu_hz", 100.0));
  preset.tau_mu = ms_to_s(get_double_or(cfg, "tau_mu_ms", 0.1));
  preset.f = get_double_or(cfg, "f", 0.01);
  preset.tau_f = ms_to_s(get_double_or(cfg, "tau_f_ms", 3.2));
  preset.runs = static_cast<int>(get_int_or(cfg, "trajectories", 50));

  DressingOnlyDrive drive(QubitKind::kD, omega, horizon);
  EnsembleConfig ec = ensemble_config(cfg, drive, preset.runs);
  if (!cfg.count("method")) ec.integrator.method = IntegratorConfig::Method::kMidpointExponential;
  if (!cfg.count("dt_ns")) ec.integrator.dt = 1.0e-6 * get_double_or(cfg, "dt_us", 0.4);
  const double record_ms = get_double_or(cfg, "record_ms", 1.0);
  ec.integrator.record_stride = std::max<int>(
      1, static_cast<int>(std::llround(ms_to_s(record_ms) / ec.integrator.dt)));

  const auto t0 = std::chrono::steady_clock::now();
  EnsembleResult res = run_ensemble(drive, PureState(state_d()), preset, ec);
  const auto t1 = std::chrono::steady_clock::now();
  const double wall = std::chrono::duration<double>(t1 - t0).count();

  std::vector<double> survival(res.fidelity.size());
  for (size_t i = 0; i < survival.size(); ++i) survival[i] = res.fidelity[i] * res.fidelity[i];
  const LifetimeFit fit = fit_exponential_lifetime(res.times, survival);

  PlotSeries s;
  s.label = "survival of |D>";
  s.color = "#d62728";
  for (size_t i = 0; i < res.times.size(); ++i) {
    ResultRow row;
    row.sweep_value = res.times[i] * 1e3;
    row.noise_marker = preset.marker;
    row.f = res.fidelity[i];
    row.f2 = survival[i];
    row.m = res.merit_series[i];
    row.sem = res.end_f2_sem;
    row.wall_time_s = i + 1 == res.times.size() ? wall : 0.0;
    out.rows.push_back(row);
    s.x.push_back(res.times[i] * 1e3);
    s.y.push_back(survival[i]);
  }
  out.plot.series.push_back(std::move(s));
  out.plot.title = "dressed-state survival and extrapolated lifetime";
  out.plot.x_label = "t (ms)";
  out.plot.y_label = "F^2";

  json rep;
  rep["t1_s"] = fit.t1;
  rep["t1_low_s"] = fit.t1_low;
  rep["t1_high_s"] = std::isfinite(fit.t1_high) ? json(fit.t1_high) : json("inf");
  rep["slope_per_s"] = fit.slope;
  rep["slope_stderr"] = fit.slope_stderr;
  out.extra_files.emplace_back("lifetime.json", rep.dump(2) + "\n");
}

// --- Stark-shift sigma-z gates ---

void run_stark_experiment(const KeyValueMap& cfg, ExperimentOutput& out) {
  const std::string variant_name = get_string_or(cfg, "variant", "dressed");
  StarkParams p;
  p.omega = from_khz(get_double_or(cfg, "omega_khz", 20.0));
  p.omega_z = from_khz(get_double_or(cfg, "omega_z_khz", 0.0));
  p.delta_z = from_khz(get_double_or(cfg, "delta_z_khz", 0.0));
  p.omega_g = from_khz(get_double_or(cfg, "omega_g_khz", 0.0));
  p.delta = from_khz(get_double_or(cfg, "delta_khz", 0.0));
  const StarkVariant variant =
      variant_name == "rf" ? StarkVariant::kRf : StarkVariant::kDressed;
  const double duration = ms_to_s(get_double_or(cfg, "duration_ms", 10.0));
  StarkZDrive drive(variant, p, duration);

  const int points = static_cast<int>(get_int_or(cfg, "points", 10));
  IntegratorConfig icfg;
  icfg.max_omega = drive.max_angular_frequency();
  icfg.dt = get_double_or(cfg, "dt_scale", 0.02) / icfg.max_omega;
  if (cfg.count("dt_ns")) icfg.dt = 1.0e-9 * get_double(cfg, "dt_ns");
  const std::int64_t n_steps =
      static_cast<std::int64_t>(std::ceil(duration / icfg.dt - 1e-12));
  icfg.record_stride = static_cast<int>(std::max<std::int64_t>(1, n_steps / points));

  const PureState psi0 = superposition_input();
  const double shift = drive.predicted_shift();
  const Vector d = state_d(), zp = state_zero_prime();
  PlotSeries s;
  s.label = drive.name();
  s.color = "#2ca02c";
  const auto t0 = std::chrono::steady_clock::now();
  HamiltonianFill fill = [&](double t, Matrix& h) { drive.fill(t, 0, 0, 0, h); };
  std::vector<std::pair<double, double>> samples;
  evolve_pure(fill, psi0, duration, icfg, [&](std::int64_t, double t, const Vector& psi) {
    // moving target: the predicted Stark phase accumulated up to time t
    Vector tgt;
    if (variant == StarkVariant::kDressed)
      tgt = (d + std::exp(-kIm * shift * t) * zp) / std::sqrt(2.0);
    else
      tgt = (std::exp(kIm * shift * t) * d + std::exp(-kIm * shift * t) * zp) / std::sqrt(2.0);
    samples.emplace_back(t, std::norm(tgt.dot(psi)));
  });
  const auto t1 = std::chrono::steady_clock::now();
  const double wall = std::chrono::duration<double>(t1 - t0).count();
  for (size_t i = 0; i < samples.size(); ++i) {
    ResultRow row;
    row.sweep_value = samples[i].first * 1e3;
    row.noise_marker = "black";
    row.f2 = samples[i].second;
    row.f = std::sqrt(std::max(0.0, row.f2));
    row.m = merit(std::min(1.0, row.f));
    row.wall_time_s = i + 1 == samples.size() ? wall : 0.0;
    out.rows.push_back(row);
    s.x.push_back(row.sweep_value);
    s.y.push_back(row.m);
  }
  out.plot.series.push_back(std::move(s));
  out.plot.title = "Stark sigma-z gate: merit vs predicted phase target";
  out.plot.x_label = "t (ms)";
  out.plot.y_label = "M";

  json rep;
  rep["predicted_shift_rad_s"] = shift;
  rep["predicted_shift_hz"] = shift / kTwoPi;
  out.extra_files.emplace_back("stark.json", rep.dump(2) + "\n");
}

// --- Zeeman regime report ---

void run_regime_experiment(const KeyValueMap& cfg, ExperimentOutput& out) {
  const IonSpecies species = IonSpecies::yb171();
  const auto b_values = cfg.count("b_gauss") ? get_double_list(cfg, "b_gauss")
                                             : std::vector<double>{1.0, 5.0, 9.8, 50.0, 100.0};
  const double omega_g = from_khz(get_double_or(cfg, "omega_g_khz", 1.9));
  const double eta = get_double_or(cfg, "eta", 0.0071);

  json rep = json::array();
  PlotSeries s;
  s.label = "Delta / 2pi (kHz)";
  s.color = "#1f77b4";
  for (double bg : b_values) {
    const double b = gauss_to_tesla(bg);
    const double delta = zeeman_gap(species, b);
    const RegimeReport r = classify(omega_g, eta * omega_g, delta, b);
    json row;
    row["b_gauss"] = bg;
    row["delta_rad_s"] = delta;
    row["delta_khz"] = delta / kTwoPi / 1e3;
    row["regime"] = r.regime == Regime::kLinear
                        ? "linear"
                        : (r.regime == Regime::kNonlinear ? "nonlinear" : "intermediate");
    row["omega_g_over_delta"] = r.omega_g_over_delta;
    row["eta_omega_g_over_delta"] = r.eta_omega_g_over_delta;
    row["delta_over_omega_g"] = r.delta_over_omega_g;
    row["b_field_margin"] = r.b_field_margin;
    rep.push_back(row);

    ResultRow rr;
    rr.sweep_value = bg;
    rr.noise_marker = "n/a";
    rr.f = 1.0;
    rr.f2 = 1.0;
    rr.m = merit(1.0);
    out.rows.push_back(rr);
    s.x.push_back(bg);
    s.y.push_back(delta / kTwoPi / 1e3);
  }
  out.extra_files.emplace_back("report.json", rep.dump(2) + "\n");
  out.plot.series.push_back(std::move(s));
  out.plot.title = "second-order Zeeman splitting vs field";
  out.plot.x_label = "B (gauss)";
  out.plot.y_label = "Delta / 2pi (kHz)";
  out.plot.log_x = true;
}

} // namespace

// --- shared building blocks ---

MsGateRun run_ms_gate(const MsPlan& plan, const TrapConfig& trap, double heating_rate,
                      double dt, double record_dt, double fine_window) {
  MsGateRun out;
  out.heating_rate = heating_rate;
  const int fock = trap.fock_dim;
  TwoIonHamiltonian ham(plan, trap, /*phonon_rotating_frame=*/true);
  HamiltonianFill fill = [&](double t, Matrix& h) { ham.fill(t, h); };

  const double span = plan.gate_time;
  IntegratorConfig icfg;
  icfg.dt = dt;
  icfg.max_omega = ham.max_angular_frequency();
  icfg.record_stride = 1;
  const std::int64_t n_steps = static_cast<std::int64_t>(std::ceil(span / dt - 1e-12));
  const double dt_eff = span / static_cast<double>(n_steps);
  const std::int64_t coarse =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(record_dt / dt_eff)));
  const double fine_start = span - fine_window;

  const Vector bell = logical_target_bell();
  const Vector dd = tensor_product(state_d(), state_d());
  const Vector zz = tensor_product(state_zero_prime(), state_zero_prime());

  auto record = [&](std::int64_t step, double t, const Matrix& rho_q) {
    if (step % coarse != 0 && t < fine_start && step != n_steps) return;
    out.times.push_back(t);
    out.f2_target.push_back(std::real((bell.adjoint() * rho_q * bell)(0, 0)));
    out.f2_dd.push_back(std::real((dd.adjoint() * rho_q * dd)(0, 0)));
    out.f2_zpzp.push_back(std::real((zz.adjoint() * rho_q * zz)(0, 0)));
    const Complex el = (dd.adjoint() * rho_q * zz)(0, 0);
    out.re_rho.push_back(el.real());
    out.im_rho.push_back(el.imag());
  };

  const Vector psi0 =
      two_ion_state(state_d(), state_d(), fock, trap.initial_phonons);
  if (heating_rate <= 0.0) {
    using RowMajorMap =
        Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
    evolve_pure(fill, PureState(psi0), span, icfg,
                [&](std::int64_t step, double t, const Vector& psi) {
                  RowMajorMap m(psi.data(), 16, fock);
                  const Matrix rho_q = m * m.adjoint();
                  record(step, t, rho_q);
                });
  } else {
    PhononSpace space{16, fock};
    HeatingModel heat;
    heat.rate = heating_rate;
    evolve_open(fill, MixedState::from_pure(PureState(psi0)), heat, space, span, icfg,
                [&](std::int64_t step, double t, const Matrix& rho) {
                  const Matrix rho_q = partial_trace_phonon(rho, 16, fock);
                  record(step, t, rho_q);
                },
                &out.max_trace_drift, &out.truncation_saturated);
  }

  out.end_f2 = out.f2_target.back();
  const double period = kPi / (plan.q + trap.nu);
  out.peak_f2 = 0.0;
  for (size_t i = 0; i < out.times.size(); ++i)
    if (out.times[i] >= span - period && out.f2_target[i] > out.peak_f2)
      out.peak_f2 = out.f2_target[i];
  return out;
}

OscillationStats analyze_oscillation(const std::vector<double>& times,
                                     const std::vector<double>& f2, double window_start) {
  OscillationStats st;
  std::vector<double> t, y;
  for (size_t i = 0; i < times.size(); ++i) {
    if (times[i] >= window_start) {
      t.push_back(times[i]);
      y.push_back(f2[i]);
    }
  }
  if (t.size() < 5) throw std::invalid_argument("analyze_oscillation: window too small");
  st.amplitude = *std::max_element(y.begin(), y.end()) - *std::min_element(y.begin(), y.end());
  // dip positions with parabolic refinement; their mean spacing is the period
  std::vector<double> dips;
  for (size_t i = 1; i + 1 < y.size(); ++i) {
    if (y[i] <= y[i - 1] && y[i] < y[i + 1]) {
      const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
      double shift = 0.0;
      if (denom > 0) shift = 0.5 * (y[i - 1] - y[i + 1]) / denom;
      const double dt = t[i + 1] - t[i];
      dips.push_back(t[i] + shift * dt);
    }
  }
  if (dips.size() >= 2)
    st.period = (dips.back() - dips.front()) / static_cast<double>(dips.size() - 1);
  return st;
}

double max_deviation_from_oscillation(const std::vector<double>& times,
                                      const std::vector<double>& f2, double window_start,
                                      double omega_g, double q, double nu) {
  double dev = 0.0;
  for (size_t i = 0; i < times.size(); ++i) {
    if (times[i] < window_start) continue;
    const double model = fidelity_oscillation(omega_g, q, nu, times[i]);
    dev = std::max(dev, std::abs(f2[i] - model));
  }
  return dev;
}

LifetimeFit fit_exponential_lifetime(const std::vector<double>& times,
                                     const std::vector<double>& survival) {
  if (times.size() != survival.size() || times.size() < 3)
    throw std::invalid_argument("fit_exponential_lifetime: need >= 3 samples");
  const size_t n = times.size();
  std::vector<double> y(n);
  for (size_t i = 0; i < n; ++i) {
    if (survival[i] <= 0.0)
      throw std::invalid_argument("fit_exponential_lifetime: survival must be > 0");
    y[i] = std::log(survival[i]);
  }
  double tm = 0, ym = 0;
  for (size_t i = 0; i < n; ++i) {
    tm += times[i];
    ym += y[i];
  }
  tm /= n;
  ym /= n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (times[i] - tm) * (times[i] - tm);
    sxy += (times[i] - tm) * (y[i] - ym);
  }
  LifetimeFit fit;
  fit.slope = sxy / sxx;
  double ss_res = 0;
  for (size_t i = 0; i < n; ++i) {
    const double r = y[i] - (ym + fit.slope * (times[i] - tm));
    ss_res += r * r;
  }
  fit.slope_stderr = std::sqrt(ss_res / (n - 2) / sxx);
  const double lo = fit.slope - 2.0 * fit.slope_stderr;
  const double hi = fit.slope + 2.0 * fit.slope_stderr;
  fit.t1 = fit.slope < 0 ? -1.0 / fit.slope : std::numeric_limits<double>::infinity();
  fit.t1_low = lo < 0 ? -1.0 / lo : std::numeric_limits<double>::infinity();
  fit.t1_high = hi < 0 ? -1.0 / hi : std::numeric_limits<double>::infinity();
  return fit;
}

// --- presets, dispatch and artifacts ---

const std::vector<PresetInfo>& experiment_presets() {
  static const std::vector<PresetInfo> kPresets = {
      {"d-lifetime", "dressed-state survival over 50 ms with an exponential lifetime fit"},
      {"fig4-bottom", "adiabatic sigma-z gate merit vs dressing strength (rate 47.124 rad/ms, x = 3.1416)"},
      {"fig4-middle", "adiabatic D->B transfer merit vs dressing strength (rate 31.416 rad/ms)"},
      {"fig4-top", "basic sigma-y gate merit vs dressing strength (0.3 ms pulse)"},
      {"ms-gate", "two-ion entangling gate: F^2(t) and end-of-gate values per heating rate"},
      {"regime-report", "Zeeman splitting and linear/non-linear classification vs field"},
      {"stark-z-dressed", "sigma-z via detuned |0>-|0'> coupling under dressing"},
      {"stark-z-rf", "sigma-z via detuned radio-frequency Stark shift"},
  };
  return kPresets;
}

KeyValueMap preset_config(const std::string& name) {
  KeyValueMap kv;
  kv["preset"] = name;
  kv["base_seed"] = "20140915";
  if (name == "fig4-top") {
    kv["kind"] = "single-qubit";
    kv["gate"] = "basic";
    kv["qubit"] = "D";
    kv["omega_g_khz"] = "1.1785";
    kv["sweep"] = "omega_khz";
    kv["sweep_log"] = "50:1000:20";
    kv["noise"] = "black,red";
    kv["trajectories"] = "50";
  } else if (name == "fig4-middle") {
    kv["kind"] = "single-qubit";
    kv["gate"] = "transfer";
    kv["qubit"] = "D";
    kv["rate_rad_per_ms"] = "31.416";
    kv["sweep"] = "omega_khz";
    kv["sweep_log"] = "50:1000:20";
    kv["noise"] = "black,blue";
    kv["trajectories"] = "50";
  } else if (name == "fig4-bottom") {
    kv["kind"] = "single-qubit";
    kv["gate"] = "sigma-z";
    kv["rate_rad_per_ms"] = "47.124";
    kv["x_rad"] = "3.1416";
    kv["sweep"] = "omega_khz";
    kv["sweep_log"] = "50:1000:20";
    kv["noise"] = "black,green";
    kv["trajectories"] = "50";
  } else if (name == "ms-gate") {
    kv["kind"] = "ms-gate";
    kv["eta"] = "0.0071";
    kv["omega_g_khz"] = "100";
    kv["omega_khz"] = "20";
    kv["delta0_khz"] = "2";
    kv["omega_z_khz"] = "10";
    kv["delta_z_khz"] = "1000";
    kv["nu_khz"] = "500";
    kv["r"] = "1";
    kv["fock_dim"] = "8";
    kv["initial_phonons"] = "0";
    kv["heating_rates"] = "0,10,100";
    kv["dt_ns"] = "5";
  } else if (name == "d-lifetime") {
    kv["kind"] = "d-lifetime";
    kv["omega_khz"] = "36.5";
    kv["sd_mu_hz"] = "100";
    kv["tau_mu_ms"] = "0.1";
    kv["f"] = "0.01";
    kv["tau_f_ms"] = "3.2";
    kv["horizon_ms"] = "50";
    kv["trajectories"] = "50";
  } else if (name == "stark-z-dressed") {
    kv["kind"] = "stark-z";
    kv["variant"] = "dressed";
    kv["omega_khz"] = "20";
    kv["omega_z_khz"] = "10";
    kv["delta_z_khz"] = "1000";
    kv["duration_ms"] = "10";
  } else if (name == "stark-z-rf") {
    kv["kind"] = "stark-z";
    kv["variant"] = "rf";
    kv["omega_khz"] = "500";
    kv["omega_g_khz"] = "1";
    kv["delta_khz"] = "20";
    kv["duration_ms"] = "10";
  } else if (name == "regime-report") {
    kv["kind"] = "regime-report";
    kv["b_gauss"] = "1,5,9.8,50,100";
    kv["omega_g_khz"] = "1.9";
    kv["eta"] = "0.0071";
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  return kv;
}

ExperimentOutput run_experiment(const KeyValueMap& config) {
  KeyValueMap cfg = config;
  if (cfg.count("preset")) {
    KeyValueMap base = preset_config(cfg.at("preset"));
    for (const auto& [k, v] : cfg) base[k] = v; // explicit keys override the preset
    cfg = base;
  }
  const std::string kind = get_string_or(cfg, "kind", "");
  if (kind.empty()) throw std::invalid_argument("config: 'kind' or 'preset' required");

  ExperimentOutput out;
  out.config = cfg;
  const auto t0 = std::chrono::steady_clock::now();
  if (kind == "single-qubit")
    run_single_qubit(cfg, out);
  else if (kind == "ms-gate")
    run_ms_gate_experiment(cfg, out);
  else if (kind == "d-lifetime")
    run_lifetime_experiment(cfg, out);
  else if (kind == "stark-z")
    run_stark_experiment(cfg, out);
  else if (kind == "regime-report")
    run_regime_experiment(cfg, out);
  else
    throw std::invalid_argument("config: unknown kind '" + kind + "'");
  const auto t1 = std::chrono::steady_clock::now();
  out.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
  return out;
}

std::string render_results_csv(const std::vector<ResultRow>& rows, bool with_timing) {
  std::string csv = "sweep_value,noise_marker,F,F2,M,sem,wall_time_s\n";
  for (const ResultRow& r : rows) {
    csv += fmt12(r.sweep_value);
    csv += ",";
    csv += r.noise_marker;
    csv += ",";
    csv += fmt12(r.f);
    csv += ",";
    csv += fmt12(r.f2);
    csv += ",";
    csv += fmt12(r.m);
    csv += ",";
    csv += fmt12(r.sem);
    csv += ",";
    csv += fmt12(with_timing ? r.wall_time_s : 0.0);
    csv += "\n";
  }
  return csv;
}

std::string render_manifest(const ExperimentOutput& out, bool with_timing) {
  json j;
  j["artifact"] = "xsim";
  j["format"] = 1;
  json cfg = json::object();
  for (const auto& [k, v] : out.config) cfg[k] = v;
  j["config"] = cfg;
  j["row_count"] = out.rows.size();
  j["warnings"] = out.warnings;
  j["seed_scheme"] =
      "trajectory k draws OU streams (3k, 3k+1, 3k+2) for (mu, dOmega, dOmega_g) from base_seed";
  if (with_timing) j["telemetry"] = {{"wall_time_s", out.wall_time_s}};
  return j.dump(2) + "\n";
}

void write_outputs(const ExperimentOutput& out, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const bool timing = get_string_or(out.config, "timing", "false") == "true";
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + name + " in " + out_dir);
    f << content;
  };
  write("results.csv", render_results_csv(out.rows, timing));
  write("manifest.json", render_manifest(out, timing));
  write("plot.svg", render_svg(out.plot));
  for (const auto& [name, content] : out.extra_files) write(name, content);
}

} // namespace xsim
