#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

// Ornstein-Uhlenbeck colored-noise generation for the magnetic (mu) and Rabi
// frequency (delta-Omega) fluctuation channels. The update rule is the exact
// one-step solution of the OU stochastic differential equation, so any step
// size reproduces the process statistics without discretization error.

namespace xsim {

struct OuParams {
  double relaxation_time = 1.0; // tau, seconds
  double stationary_sd = 0.0;   // SD of the fully relaxed process, rad/s
  std::optional<double> initial_value; // default: drawn from the stationary distribution

  // diffusion constant c with SD = sqrt(c tau / 2)
  double diffusion() const { return 2.0 * stationary_sd * stationary_sd / relaxation_time; }
};

struct NoiseTrajectory {
  double dt = 0.0;
  std::vector<double> samples; // rad/s
  std::uint64_t seed = 0;
  std::uint32_t stream_id = 0;
};

// One row of the noise-parameter table driving the ensemble simulations.
struct NoisePreset {
  std::string marker;
  double sd_mu = 0.0;  // rad/s
  double tau_mu = 0.0; // s
  double f = 0.0;      // fractional Rabi noise
  double tau_f = 0.0;  // s
  int runs = 1;
};

// Deterministic per (seed, stream_id); the normal deviates come from a
// hand-rolled polar Box-Muller over mt19937_64 so the byte stream does not
// depend on the standard library's distribution implementation.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream_id);
  double uniform(); // [0, 1)
  double normal();  // standard normal

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

// Exact OU update over a step dt: x' = x e^(-dt/tau) + SD sqrt(1 - e^(-2 dt/tau)) g.
double ou_update(double x, double dt, const OuParams& params, double gauss);

NoiseTrajectory sample_trajectory(const OuParams& params, double dt, int n,
                                  std::uint64_t seed, std::uint32_t stream_id);

// Two-sided Lorentzian spectral density S(w) = 2 SD^2 tau / (1 + w^2 tau^2),
// normalized so (1/2pi) Int S dw = SD^2; the knee sits at w = 1/tau.
double spectral_density(const OuParams& params, double omega);

// Preset table lookup: black, red, yellow, green, blue and their -dashed twins.
const NoisePreset& noise_preset(std::string_view marker);
const std::vector<NoisePreset>& noise_presets();

} // namespace xsim
