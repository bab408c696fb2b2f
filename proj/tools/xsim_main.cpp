// xsim command-line front end. Talks to the simulator exclusively through the
// public C interface in xsim/xsim.h.

#include <xsim/xsim.h>

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

namespace {

struct ExperimentDeleter {
  void operator()(xsim_experiment* e) const { xsim_experiment_free(e); }
};
using ExperimentPtr = std::unique_ptr<xsim_experiment, ExperimentDeleter>;

int bail(xsim_status st, const char* context) {
  std::fprintf(stderr, "xsim: %s: %s (%s)\n", context, xsim_last_error(),
               xsim_status_name(st));
  return 1;
}

struct CommonOpts {
  std::string out_dir = "xsim-out";
  long long seed = -1;
  int workers = 0;
  long long trajectories = 0;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--out", opts.out_dir, "output directory (results.csv, manifest.json, plot.svg)");
  cmd->add_option("--seed", opts.seed, "base seed for the noise streams");
  cmd->add_option("--workers", opts.workers, "worker threads (default: XSIM_WORKERS or 1)");
  cmd->add_option("--trajectories", opts.trajectories,
                  "trajectories per noisy ensemble (desk-scale override)");
  cmd->add_option("--override", opts.overrides, "extra key=value config overrides")
      ->type_name("KEY=VALUE");
}

int apply_common(xsim_experiment* exp, const CommonOpts& opts) {
  auto set = [&](const char* key, const std::string& value) {
    const xsim_status st = xsim_experiment_set(exp, key, value.c_str());
    return st == XSIM_OK ? 0 : bail(st, "setting option");
  };
  if (opts.seed >= 0 && set("base_seed", std::to_string(opts.seed))) return 1;
  if (opts.workers > 0 && set("workers", std::to_string(opts.workers))) return 1;
  if (opts.trajectories > 0 && set("trajectories", std::to_string(opts.trajectories))) return 1;
  for (const std::string& kv : opts.overrides) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::fprintf(stderr, "xsim: bad --override '%s' (expected key=value)\n", kv.c_str());
      return 1;
    }
    const xsim_status st =
        xsim_experiment_set(exp, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
    if (st != XSIM_OK) return bail(st, "applying override");
  }
  return 0;
}

int run_and_report(xsim_experiment* exp, const std::string& out_dir) {
  const xsim_status st = xsim_experiment_run(exp, out_dir.c_str());
  if (st != XSIM_OK) return bail(st, "running experiment");
  int warnings = 0;
  xsim_experiment_warning_count(exp, &warnings);
  for (int i = 0; i < warnings; ++i) {
    const char* msg = nullptr;
    if (xsim_experiment_warning(exp, i, &msg) == XSIM_OK)
      std::fprintf(stderr, "xsim: warning: %s\n", msg);
  }
  int rows = 0;
  xsim_experiment_row_count(exp, &rows);
  std::printf("sweep_value  noise_marker            F          F2           M\n");
  for (int i = 0; i < rows; ++i) {
    double sweep, f, f2, m, sem;
    char marker[64];
    if (xsim_experiment_row(exp, i, &sweep, marker, sizeof marker, &f, &f2, &m, &sem) !=
        XSIM_OK)
      continue;
    std::printf("%11.5g  %-12s %12.8f %11.8f %11.5f\n", sweep, marker, f, f2, m);
  }
  std::printf("wrote %s/results.csv, manifest.json, plot.svg\n", out_dir.c_str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"dressed-state trapped-ion gate simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(xsim_version()));

  std::string config_path, preset_name;
  CommonOpts run_opts, preset_opts;

  CLI::App* run = app.add_subcommand("run", "run an experiment from a config file");
  run->add_option("config", config_path, "key = value config file or a manifest.json")
      ->required();
  add_common(run, run_opts);

  CLI::App* preset = app.add_subcommand("preset", "run a built-in experiment preset");
  preset->add_option("name", preset_name, "preset name (see `xsim list`)")->required();
  add_common(preset, preset_opts);

  CLI::App* list = app.add_subcommand("list", "list the built-in experiment presets");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (int i = 0; i < xsim_preset_count(); ++i) {
      const char *name = nullptr, *description = nullptr;
      if (xsim_preset_info(i, &name, &description) == XSIM_OK)
        std::printf("%-16s %s\n", name, description);
    }
    return 0;
  }

  xsim_experiment* raw = nullptr;
  const CommonOpts* opts = nullptr;
  if (run->parsed()) {
    const xsim_status st = xsim_experiment_from_file(config_path.c_str(), &raw);
    if (st != XSIM_OK) return bail(st, "loading config");
    opts = &run_opts;
  } else {
    const xsim_status st = xsim_experiment_from_preset(preset_name.c_str(), &raw);
    if (st != XSIM_OK) return bail(st, "loading preset");
    opts = &preset_opts;
  }
  ExperimentPtr exp(raw);
  if (apply_common(exp.get(), *opts)) return 1;
  return run_and_report(exp.get(), opts->out_dir);
}
