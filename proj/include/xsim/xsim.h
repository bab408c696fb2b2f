#ifndef XSIM_XSIM_H
#define XSIM_XSIM_H

/*
 * Public C interface of the dressed-state trapped-ion gate simulator.
 *
 * Conventions:
 *   - every function returns an xsim_status; results go to out-parameters
 *   - all frequency-like quantities are angular frequencies in rad/s
 *   - handles are opaque; free them with the matching *_free function
 *   - on failure, xsim_last_error() returns a thread-local message
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define XSIM_API __declspec(dllexport)
#else
#define XSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum xsim_status {
  XSIM_OK = 0,
  XSIM_ERROR_INVALID_ARGUMENT = 1,
  XSIM_ERROR_PARSE = 2,
  XSIM_ERROR_IO = 3,
  XSIM_ERROR_CONSTRAINT = 4,
  XSIM_ERROR_UNKNOWN_NAME = 5,
  XSIM_ERROR_INTERNAL = 6
} xsim_status;

XSIM_API const char* xsim_version(void);
XSIM_API const char* xsim_status_name(xsim_status status);
/* thread-local message describing the most recent failure in this thread */
XSIM_API const char* xsim_last_error(void);

/* ---- scalar helpers ---- */

/* M = log10(1 - f^2), floored at -16 for f = 1 */
XSIM_API xsim_status xsim_merit(double fidelity, double* out);

/* effective Lamb-Dicke parameter from trap constants */
XSIM_API xsim_status xsim_effective_eta(double ion_mass_kg, double gradient_t_per_m,
                                        double nu_rad_s, double zeta, double* out);

/* entangling-gate plan: T = pi sqrt(R)/(sqrt(2) eta omega_g), q = 2 sqrt(2R) eta omega_g */
XSIM_API xsim_status xsim_ms_plan(int r, double eta, double omega_g_rad_s,
                                  double* gate_time_s, double* sideband_q_rad_s);

/* second-order Zeeman splitting 2 (mu_B B)^2 / A for a hyperfine splitting A */
XSIM_API xsim_status xsim_zeeman_gap(double hyperfine_rad_s, double b_tesla, double* out);

/* exact Ornstein-Uhlenbeck update over a step dt */
XSIM_API xsim_status xsim_ou_update(double x, double dt_s, double tau_s, double stationary_sd,
                                    double gauss, double* out);

/* noise preset table row; marker is e.g. "red" or "blue-dashed" */
XSIM_API xsim_status xsim_noise_preset(const char* marker, double* sd_mu_rad_s,
                                       double* tau_mu_s, double* f, double* tau_f_s,
                                       int* runs);

/* ---- experiment presets ---- */

XSIM_API int xsim_preset_count(void);
XSIM_API xsim_status xsim_preset_info(int index, const char** name, const char** description);

/* ---- experiments (opaque handle) ---- */

typedef struct xsim_experiment xsim_experiment;

/* configuration from a file (key = value text or a manifest/JSON object) */
XSIM_API xsim_status xsim_experiment_from_file(const char* path, xsim_experiment** out);
XSIM_API xsim_status xsim_experiment_from_text(const char* text, xsim_experiment** out);
XSIM_API xsim_status xsim_experiment_from_preset(const char* name, xsim_experiment** out);
/* override one key before running */
XSIM_API xsim_status xsim_experiment_set(xsim_experiment* exp, const char* key,
                                         const char* value);

/* run and write results.csv, manifest.json, plot.svg (and per-kind extras) */
XSIM_API xsim_status xsim_experiment_run(xsim_experiment* exp, const char* out_dir);

/* post-run row access */
XSIM_API xsim_status xsim_experiment_row_count(const xsim_experiment* exp, int* out);
XSIM_API xsim_status xsim_experiment_row(const xsim_experiment* exp, int index,
                                         double* sweep_value, char* marker_buf,
                                         size_t marker_cap, double* f, double* f2, double* m,
                                         double* sem);
XSIM_API xsim_status xsim_experiment_warning_count(const xsim_experiment* exp, int* out);
XSIM_API xsim_status xsim_experiment_warning(const xsim_experiment* exp, int index,
                                             const char** message);

XSIM_API void xsim_experiment_free(xsim_experiment* exp);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* XSIM_XSIM_H */
