#include "ou_noise.hpp"

#include "units.hpp"

#include <cmath>
#include <stdexcept>

namespace xsim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

} // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream_id)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream_id * 0xD1342543DE82EF95ULL + 1))) {}

double Rng::uniform() {
  // 53-bit mantissa in [0, 1)
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  cached_ = v * factor;
  has_cached_ = true;
  return u * factor;
}

double ou_update(double x, double dt, const OuParams& params, double gauss) {
  if (dt <= 0.0) throw std::invalid_argument("ou_update: dt must be positive");
  const double decay = std::exp(-dt / params.relaxation_time);
  const double sd = params.stationary_sd * std::sqrt(1.0 - decay * decay);
  return x * decay + sd * gauss;
}

NoiseTrajectory sample_trajectory(const OuParams& params, double dt, int n,
                                  std::uint64_t seed, std::uint32_t stream_id) {
  if (n < 1) throw std::invalid_argument("sample_trajectory: n must be >= 1");
  if (params.relaxation_time <= 0.0 || params.stationary_sd < 0.0)
    throw std::invalid_argument("sample_trajectory: invalid OU parameters");
  NoiseTrajectory out;
  out.dt = dt;
  out.seed = seed;
  out.stream_id = stream_id;
  out.samples.resize(n);
  Rng rng(seed, stream_id);
  double x = params.initial_value ? *params.initial_value : params.stationary_sd * rng.normal();
  out.samples[0] = x;
  for (int i = 1; i < n; ++i) {
    x = ou_update(x, dt, params, rng.normal());
    out.samples[i] = x;
  }
  return out;
}

double spectral_density(const OuParams& params, double omega) {
  if (omega < 0.0) throw std::invalid_argument("spectral_density: omega must be >= 0");
  const double sd2 = params.stationary_sd * params.stationary_sd;
  const double wt = omega * params.relaxation_time;
  return 2.0 * sd2 * params.relaxation_time / (1.0 + wt * wt);
}

const std::vector<NoisePreset>& noise_presets() {
  static const std::vector<NoisePreset> kTable = [] {
    auto row = [](std::string marker, double sd_mu_hz, double tau_mu_ms, double f,
                  double tau_f_ms, int runs) {
      NoisePreset p;
      p.marker = std::move(marker);
      p.sd_mu = from_hz(sd_mu_hz);
      p.tau_mu = ms_to_s(tau_mu_ms);
      p.f = f;
      p.tau_f = ms_to_s(tau_f_ms);
      p.runs = runs;
      return p;
    };
    std::vector<NoisePreset> t;
    t.push_back(row("black", 0.0, 1.0, 0.0, 1.0, 1)); // zero-noise reference
    t.push_back(row("red", 100.0, 0.16, 0.01, 32.0, 200));
    t.push_back(row("yellow", 100.0, 0.016, 0.01, 32.0, 200));
    t.push_back(row("green", 100.0, 0.16, 0.01, 3.2, 200));
    t.push_back(row("blue", 100.0, 0.016, 0.01, 3.2, 200));
    t.push_back(row("red-dashed", 500.0, 0.16, 0.05, 32.0, 200));
    t.push_back(row("yellow-dashed", 500.0, 0.016, 0.05, 32.0, 200));
    t.push_back(row("green-dashed", 500.0, 0.16, 0.05, 3.2, 200));
    t.push_back(row("blue-dashed", 500.0, 0.016, 0.05, 3.2, 200));
    return t;
  }();
  return kTable;
}

const NoisePreset& noise_preset(std::string_view marker) {
  for (const auto& p : noise_presets())
    if (p.marker == marker) return p;
  throw std::invalid_argument("noise_preset: unknown marker '" + std::string(marker) + "'");
}

} // namespace xsim
