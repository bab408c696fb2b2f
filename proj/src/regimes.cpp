#include "regimes.hpp"

#include "units.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace xsim {

namespace {
constexpr double kBFieldCap = 0.45; // T, noise-sensitivity bound on |0'>
} // namespace

IonSpecies IonSpecies::yb171() {
  IonSpecies s;
  s.hyperfine_splitting = from_hz(12.6e9);
  s.bohr_response = kBohrResponse;
  return s;
}

double zeeman_gap(const IonSpecies& species, double b_field) {
  if (b_field < 0.0) throw std::invalid_argument("zeeman_gap: B must be >= 0");
  if (species.hyperfine_splitting <= 0.0 || species.bohr_response <= 0.0)
    throw std::invalid_argument("zeeman_gap: invalid species constants");
  const double mu_b = species.bohr_response * b_field; // rad/s
  return 2.0 * mu_b * mu_b / species.hyperfine_splitting;
}

RegimeReport classify(double omega_g, double eta_omega_g, double delta, double b_field,
                      double threshold) {
  RegimeReport r;
  r.threshold = threshold;
  const double inf = std::numeric_limits<double>::infinity();
  r.omega_g_over_delta = delta > 0.0 ? omega_g / delta : inf;
  r.eta_omega_g_over_delta = delta > 0.0 ? eta_omega_g / delta : inf;
  r.delta_over_omega_g = omega_g > 0.0 ? delta / omega_g : inf;
  r.b_field_margin = b_field / kBFieldCap;
  if (r.omega_g_over_delta >= threshold && r.eta_omega_g_over_delta >= threshold)
    r.regime = Regime::kLinear;
  else if (r.delta_over_omega_g >= threshold)
    r.regime = Regime::kNonlinear;
  else
    r.regime = Regime::kIntermediate;
  return r;
}

double dressed_delta(const IonSpecies& species, double b_field, double omega_z,
                     double delta_z, double omega, double min_ratio) {
  const double base = zeeman_gap(species, b_field);
  if (omega_z == 0.0) return base;
  const double sqrt2 = std::sqrt(2.0);
  const double gap = std::min(std::abs(omega + sqrt2 * delta_z), std::abs(omega - sqrt2 * delta_z));
  if (gap < min_ratio * omega_z)
    throw std::domain_error("dressed_delta: |Omega +- sqrt(2) delta_z| >> Omega_z violated");
  return base + delta_z * omega_z * omega_z / (omega * omega - 2.0 * delta_z * delta_z);
}

} // namespace xsim
