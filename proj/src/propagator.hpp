#pragma once

#include "drives.hpp"
#include "ou_noise.hpp"
#include "qops.hpp"

#include <cstdint>
#include <functional>
#include <vector>

// Time evolution of pure and open systems under time-dependent Hamiltonians,
// plus the stochastic-trajectory ensemble machinery. All propagation works on
// a fill-style Hamiltonian callback so hot loops avoid per-step allocation.

namespace xsim {

// Completely overwrites h with H(t); h arrives sized dim x dim.
using HamiltonianFill = std::function<void(double t, Matrix& h)>;

struct IntegratorConfig {
  double dt = 0.0; // upper bound; the effective step divides the span exactly
  enum class Method { kRk4, kMidpointExponential };
  Method method = Method::kRk4;
  bool norm_renormalize = false;
  int record_stride = 1;
  double max_omega = 0.0; // declared fastest angular frequency of the schedule
};

// Throws unless dt * max_omega <= 0.1 (when a max_omega is declared).
void validate_step(const IntegratorConfig& cfg);

struct PureRun {
  std::vector<double> times;
  std::vector<Vector> states;
  double max_norm_drift = 0.0; // max |norm - 1| observed (renormalization off)
  const Vector& final_state() const { return states.back(); }
};

using PureObserver = std::function<void(std::int64_t step, double t, const Vector& psi)>;

PureRun evolve_pure(const HamiltonianFill& fill, const PureState& psi0, double t_span,
                    const IntegratorConfig& cfg);
// Observer form: called at stride points and at the final step; records nothing.
void evolve_pure(const HamiltonianFill& fill, const PureState& psi0, double t_span,
                 const IntegratorConfig& cfg, const PureObserver& observe);

struct HeatingModel {
  double rate = 0.0; // phonons/s
  enum class Mode { kHeatingOnly, kInfiniteTemperature };
  Mode mode = Mode::kHeatingOnly;
};

// Composite-space factorization with the phonon index innermost; provides the
// truncated ladder operators.
struct PhononSpace {
  int qubit_dim = 1;
  int fock_dim = 1;
  int dim() const { return qubit_dim * fock_dim; }
  Matrix annihilation() const; // b on the full space
  Matrix creation() const;     // b^dag on the full space
  Matrix number() const;       // b^dag b
};

struct OpenRun {
  std::vector<double> times;
  std::vector<Matrix> rhos;
  double max_trace_drift = 0.0;
  bool truncation_saturated = false; // top Fock level exceeded 1e-4 population
  const Matrix& final_rho() const { return rhos.back(); }
};

using OpenObserver = std::function<void(std::int64_t step, double t, const Matrix& rho)>;

OpenRun evolve_open(const HamiltonianFill& fill, const MixedState& rho0,
                    const HeatingModel& heating, const PhononSpace& space, double t_span,
                    const IntegratorConfig& cfg);
void evolve_open(const HamiltonianFill& fill, const MixedState& rho0,
                 const HeatingModel& heating, const PhononSpace& space, double t_span,
                 const IntegratorConfig& cfg, const OpenObserver& observe,
                 double* max_trace_drift = nullptr, bool* saturated = nullptr);

// Stochastic ensemble over OU noise trajectories for a single-ion drive.
struct EnsembleConfig {
  int n_traj = 1;
  std::uint64_t base_seed = 0;
  int workers = 1;
  double noise_step = 1.0e-6; // seconds between OU updates
  IntegratorConfig integrator;
};

struct EnsembleResult {
  std::vector<double> times;
  std::vector<Matrix> mean_density; // averaged |psi><psi| per recorded time
  std::vector<double> fidelity;     // F(t) of the mean state vs the drive target
  std::vector<double> merit_series; // M(t) = log10(1 - F^2)
  std::vector<std::uint64_t> trajectory_seeds;
  int trajectory_count = 0;
  std::vector<double> per_traj_end_f2;
  double end_f2_sem = 0.0; // SEM over trajectories of the end-of-run F^2

  double end_fidelity() const { return fidelity.back(); }
  double end_merit() const { return merit_series.back(); }
};

// Noise streams per trajectory k: mu uses stream 3k, delta-Omega 3k+1,
// delta-Omega_g 3k+2. SDs: (sd_mu, tau_mu), (sqrt(2) f Omega, tau_f),
// (f Omega_g, tau_f). Deterministic for fixed base_seed; the reduction order
// is fixed by trajectory index regardless of worker count.
EnsembleResult run_ensemble(const SingleIonDrive& drive, const PureState& psi0,
                            const NoisePreset& preset, const EnsembleConfig& cfg);

} // namespace xsim
