#include "xsim/xsim.h"

#include "dressed_two.hpp"
#include "experiment.hpp"
#include "ou_noise.hpp"
#include "qops.hpp"
#include "regimes.hpp"

#include <cstring>
#include <exception>
#include <string>

namespace {

thread_local std::string g_last_error;

xsim_status fail(xsim_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// exceptions from the core map onto status codes at this boundary
template <class Fn>
xsim_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::domain_error& e) {
    return fail(XSIM_ERROR_CONSTRAINT, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(XSIM_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::runtime_error& e) {
    return fail(XSIM_ERROR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(XSIM_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(XSIM_ERROR_INTERNAL, "unknown error");
  }
}

xsim_status require(bool ok, const char* what) {
  return ok ? XSIM_OK : fail(XSIM_ERROR_INVALID_ARGUMENT, what);
}

} // namespace

struct xsim_experiment {
  xsim::KeyValueMap config;
  xsim::ExperimentOutput output;
  bool ran = false;
};

extern "C" {

const char* xsim_version(void) { return "1.0.0"; }

const char* xsim_status_name(xsim_status status) {
  switch (status) {
    case XSIM_OK: return "ok";
    case XSIM_ERROR_INVALID_ARGUMENT: return "invalid-argument";
    case XSIM_ERROR_PARSE: return "parse-error";
    case XSIM_ERROR_IO: return "io-error";
    case XSIM_ERROR_CONSTRAINT: return "constraint-violation";
    case XSIM_ERROR_UNKNOWN_NAME: return "unknown-name";
    case XSIM_ERROR_INTERNAL: return "internal-error";
  }
  return "unknown-status";
}

const char* xsim_last_error(void) { return g_last_error.c_str(); }

xsim_status xsim_merit(double fidelity, double* out) {
  if (auto st = require(out != nullptr, "xsim_merit: out is null"); st != XSIM_OK) return st;
  return guarded([&] {
    *out = xsim::merit(fidelity);
    return XSIM_OK;
  });
}

xsim_status xsim_effective_eta(double ion_mass_kg, double gradient_t_per_m, double nu_rad_s,
                               double zeta, double* out) {
  if (auto st = require(out != nullptr, "xsim_effective_eta: out is null"); st != XSIM_OK)
    return st;
  return guarded([&] {
    xsim::TrapConfig trap;
    trap.ion_mass = ion_mass_kg;
    trap.magnetic_gradient = gradient_t_per_m;
    trap.nu = nu_rad_s;
    trap.zeta = zeta;
    *out = xsim::effective_eta(trap);
    return XSIM_OK;
  });
}

xsim_status xsim_ms_plan(int r, double eta, double omega_g_rad_s, double* gate_time_s,
                         double* sideband_q_rad_s) {
  if (auto st = require(gate_time_s && sideband_q_rad_s, "xsim_ms_plan: out is null");
      st != XSIM_OK)
    return st;
  return guarded([&] {
    const xsim::MsPlan plan = xsim::ms_plan(r, eta, omega_g_rad_s, {});
    *gate_time_s = plan.gate_time;
    *sideband_q_rad_s = plan.q;
    return XSIM_OK;
  });
}

xsim_status xsim_zeeman_gap(double hyperfine_rad_s, double b_tesla, double* out) {
  if (auto st = require(out != nullptr, "xsim_zeeman_gap: out is null"); st != XSIM_OK)
    return st;
  return guarded([&] {
    xsim::IonSpecies species = xsim::IonSpecies::yb171();
    species.hyperfine_splitting = hyperfine_rad_s;
    *out = xsim::zeeman_gap(species, b_tesla);
    return XSIM_OK;
  });
}

xsim_status xsim_ou_update(double x, double dt_s, double tau_s, double stationary_sd,
                           double gauss, double* out) {
  if (auto st = require(out != nullptr, "xsim_ou_update: out is null"); st != XSIM_OK)
    return st;
  return guarded([&] {
    xsim::OuParams p;
    p.relaxation_time = tau_s;
    p.stationary_sd = stationary_sd;
    *out = xsim::ou_update(x, dt_s, p, gauss);
    return XSIM_OK;
  });
}

xsim_status xsim_noise_preset(const char* marker, double* sd_mu_rad_s, double* tau_mu_s,
                              double* f, double* tau_f_s, int* runs) {
  if (auto st = require(marker != nullptr, "xsim_noise_preset: marker is null"); st != XSIM_OK)
    return st;
  return guarded([&]() -> xsim_status {
    try {
      const xsim::NoisePreset& p = xsim::noise_preset(marker);
      if (sd_mu_rad_s) *sd_mu_rad_s = p.sd_mu;
      if (tau_mu_s) *tau_mu_s = p.tau_mu;
      if (f) *f = p.f;
      if (tau_f_s) *tau_f_s = p.tau_f;
      if (runs) *runs = p.runs;
      return XSIM_OK;
    } catch (const std::invalid_argument& e) {
      return fail(XSIM_ERROR_UNKNOWN_NAME, e.what());
    }
  });
}

int xsim_preset_count(void) { return static_cast<int>(xsim::experiment_presets().size()); }

xsim_status xsim_preset_info(int index, const char** name, const char** description) {
  const auto& presets = xsim::experiment_presets();
  if (auto st = require(index >= 0 && index < static_cast<int>(presets.size()),
                        "xsim_preset_info: index out of range");
      st != XSIM_OK)
    return st;
  if (name) *name = presets[index].name.c_str();
  if (description) *description = presets[index].description.c_str();
  return XSIM_OK;
}

xsim_status xsim_experiment_from_file(const char* path, xsim_experiment** out) {
  if (auto st = require(path && out, "xsim_experiment_from_file: null argument"); st != XSIM_OK)
    return st;
  return guarded([&]() -> xsim_status {
    try {
      auto* exp = new xsim_experiment{};
      exp->config = xsim::parse_config_file(path);
      *out = exp;
      return XSIM_OK;
    } catch (const std::invalid_argument& e) {
      return fail(XSIM_ERROR_PARSE, e.what());
    }
  });
}

xsim_status xsim_experiment_from_text(const char* text, xsim_experiment** out) {
  if (auto st = require(text && out, "xsim_experiment_from_text: null argument"); st != XSIM_OK)
    return st;
  return guarded([&]() -> xsim_status {
    try {
      auto* exp = new xsim_experiment{};
      exp->config = xsim::parse_config_text(text);
      *out = exp;
      return XSIM_OK;
    } catch (const std::invalid_argument& e) {
      return fail(XSIM_ERROR_PARSE, e.what());
    }
  });
}

xsim_status xsim_experiment_from_preset(const char* name, xsim_experiment** out) {
  if (auto st = require(name && out, "xsim_experiment_from_preset: null argument");
      st != XSIM_OK)
    return st;
  return guarded([&]() -> xsim_status {
    try {
      auto* exp = new xsim_experiment{};
      exp->config = xsim::preset_config(name);
      *out = exp;
      return XSIM_OK;
    } catch (const std::invalid_argument& e) {
      return fail(XSIM_ERROR_UNKNOWN_NAME, e.what());
    }
  });
}

xsim_status xsim_experiment_set(xsim_experiment* exp, const char* key, const char* value) {
  if (auto st = require(exp && key && value && !exp->ran,
                        "xsim_experiment_set: null argument or experiment already ran");
      st != XSIM_OK)
    return st;
  exp->config[key] = value;
  return XSIM_OK;
}

xsim_status xsim_experiment_run(xsim_experiment* exp, const char* out_dir) {
  if (auto st = require(exp != nullptr, "xsim_experiment_run: exp is null"); st != XSIM_OK)
    return st;
  return guarded([&] {
    exp->output = xsim::run_experiment(exp->config);
    exp->ran = true;
    if (out_dir && out_dir[0] != '\0') xsim::write_outputs(exp->output, out_dir);
    return XSIM_OK;
  });
}

xsim_status xsim_experiment_row_count(const xsim_experiment* exp, int* out) {
  if (auto st = require(exp && out && exp->ran,
                        "xsim_experiment_row_count: null argument or experiment not run");
      st != XSIM_OK)
    return st;
  *out = static_cast<int>(exp->output.rows.size());
  return XSIM_OK;
}

xsim_status xsim_experiment_row(const xsim_experiment* exp, int index, double* sweep_value,
                                char* marker_buf, size_t marker_cap, double* f, double* f2,
                                double* m, double* sem) {
  if (auto st = require(exp && exp->ran, "xsim_experiment_row: experiment not run");
      st != XSIM_OK)
    return st;
  if (auto st = require(index >= 0 && index < static_cast<int>(exp->output.rows.size()),
                        "xsim_experiment_row: index out of range");
      st != XSIM_OK)
    return st;
  const xsim::ResultRow& r = exp->output.rows[index];
  if (sweep_value) *sweep_value = r.sweep_value;
  if (marker_buf && marker_cap > 0) {
    std::strncpy(marker_buf, r.noise_marker.c_str(), marker_cap - 1);
    marker_buf[marker_cap - 1] = '\0';
  }
  if (f) *f = r.f;
  if (f2) *f2 = r.f2;
  if (m) *m = r.m;
  if (sem) *sem = r.sem;
  return XSIM_OK;
}

xsim_status xsim_experiment_warning_count(const xsim_experiment* exp, int* out) {
  if (auto st = require(exp && out && exp->ran,
                        "xsim_experiment_warning_count: experiment not run");
      st != XSIM_OK)
    return st;
  *out = static_cast<int>(exp->output.warnings.size());
  return XSIM_OK;
}

xsim_status xsim_experiment_warning(const xsim_experiment* exp, int index,
                                    const char** message) {
  if (auto st = require(exp && message && exp->ran,
                        "xsim_experiment_warning: experiment not run");
      st != XSIM_OK)
    return st;
  if (auto st = require(index >= 0 && index < static_cast<int>(exp->output.warnings.size()),
                        "xsim_experiment_warning: index out of range");
      st != XSIM_OK)
    return st;
  *message = exp->output.warnings[index].c_str();
  return XSIM_OK;
}

void xsim_experiment_free(xsim_experiment* exp) { delete exp; }

} // extern "C"
