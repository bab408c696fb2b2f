#pragma once

// Zeeman-regime analysis for Yb-171-like hyperfine level structures:
// second-order splitting of the |0>/|0'> pair, classification into the
// linear / non-linear addressing regimes, and the dressed-Stark-shift
// mediation of the splitting.

namespace xsim {

struct IonSpecies {
  double hyperfine_splitting = 0.0; // A, rad/s
  double bohr_response = 0.0;       // mu_B/hbar, rad/(s T)
  static IonSpecies yb171();
};

// Delta = 2 (mu_B B)^2 / A, rad/s.
double zeeman_gap(const IonSpecies& species, double b_field);

enum class Regime { kLinear, kNonlinear, kIntermediate };

struct RegimeReport {
  Regime regime = Regime::kIntermediate;
  double omega_g_over_delta = 0.0;     // single-qubit margin, linear wants >> 1
  double eta_omega_g_over_delta = 0.0; // gate margin, linear wants >> 1
  double delta_over_omega_g = 0.0;     // nonlinear wants >> 1
  double b_field_margin = 0.0;         // B / 0.45 T
  double threshold = 10.0;
};

// linear if both margins reach the threshold, nonlinear if the inverted
// margin does, intermediate otherwise.
RegimeReport classify(double omega_g, double eta_omega_g, double delta, double b_field,
                      double threshold = 10.0);

// Splitting with the dressed-Stark mediation term added:
// Delta = 2 (mu_B B)^2/A + delta_z omega_z^2 / (Omega^2 - 2 delta_z^2),
// valid for |Omega +- sqrt(2) delta_z| >= min_ratio * omega_z.
double dressed_delta(const IonSpecies& species, double b_field, double omega_z,
                     double delta_z, double omega, double min_ratio = 10.0);

} // namespace xsim
