#pragma once

#include "dressed_single.hpp"
#include "qops.hpp"

#include <vector>

// Two-ion + shared-motional-mode construction: trap constants, the derived
// entangling-gate plan, the full interaction-picture Hamiltonian (no eta
// expansion), the polaron-type transformation used by the analysis
// operations, constraint checks and the analytic fidelity-correction formula.
//
// Kronecker ordering is fixed as ion1 (x) ion2 (x) phonon.

namespace xsim {

struct TrapConfig {
  double ion_mass = 0.0;          // kg
  double magnetic_gradient = 0.0; // T/m
  double nu = 0.0;                // motional mode angular frequency, rad/s
  double zeta = 0.70710678118654752440; // translation factor, 1/sqrt(2) for two ions
  int fock_dim = 8;
  int initial_phonons = 0;
  double heating_rate = 0.0; // phonons/s
};

// Effective Lamb-Dicke parameter: kappa = (mu_B/hbar) dB/dz zeta sqrt(hbar/(2 m nu)),
// eta = kappa / nu.
double effective_eta(const TrapConfig& trap);

struct DressingParams {
  double omega = 0.0;   // dressing Rabi frequency
  double delta_0 = 0.0; // common dressing detuning
  double omega_z = 0.0; // auxiliary |0>-|0'> coupling
  double delta_z = 0.0; // auxiliary coupling detuning
};

struct MsPlan {
  int r = 1;
  double eta = 0.0;
  double omega_g = 0.0;
  double q = 0.0; // sideband detuning, rad/s
  double gate_time = 0.0; // T, seconds
  double omega = 0.0;
  double delta_0 = 0.0;
  double omega_z = 0.0;
  double delta_z = 0.0;
};

// T = pi sqrt(R) / (sqrt(2) eta omega_g), q = 2 sqrt(2R) eta omega_g;
// q T = 2 pi R and T (eta omega_g)^2 / q = pi/4 hold by construction.
MsPlan ms_plan(int r, double eta, double omega_g, const DressingParams& dressing);

// Full two-ion Hamiltonian at time t: per-ion dressing legs with detuning
// delta_0 folded in as 2 delta_0 |0><0|, four RF legs per ion at the +-q
// sideband detunings, the auxiliary omega_z/delta_z leg, shared phonon energy
// nu b+ b and the gradient coupling kappa (sz1 + sz2)(b+ + b).
Operator two_ion_hamiltonian_at(double t, const MsPlan& plan, const TrapConfig& trap);

// Efficient fill-style builder. With phonon_rotating_frame the nu b+b term is
// absorbed into the frame (b -> b e^{-i nu t}); qubit-space observables taken
// after a phonon partial trace are unchanged by that frame choice.
class TwoIonHamiltonian {
 public:
  TwoIonHamiltonian(const MsPlan& plan, const TrapConfig& trap,
                    bool phonon_rotating_frame = false, double mu1 = 0.0, double mu2 = 0.0);

  int dim() const { return dim_; }
  int fock_dim() const { return fock_; }
  void fill(double t, Matrix& h) const;
  double max_angular_frequency() const { return max_omega_; }

 private:
  struct Entry {
    int row, col;
    double w;
  };
  int fock_, dim_;
  double omega_g_, nu_plus_q_, omega_z_half_, delta_z_, kappa_, nu_;
  bool rotating_;
  Matrix base_;
  std::vector<Entry> rf_;     // real-symmetric entries scaled by omega_g cos((nu+q) t)
  std::vector<Entry> zleg_;   // upper entries scaled by (omega_z/2) e^{i delta_z t}
  std::vector<Entry> ladder_; // upper entries of (sz1+sz2) (x) b, rotating frame only
  double max_omega_ = 0.0;
};

// Conjugation by exp(eta * charge (x) (b+ - b)); charge acts on the qubit
// factor, the Fock dimension is inferred from the operator dimension.
Operator sw_transform(const Operator& op, double eta, const Operator& charge_op);

// Second-order resonance coefficient -2 eta^2 nu^3 / (2 nu^2 - Omega^2).
double resonance_shift(double eta, double nu, double omega);

struct ConstraintReport {
  double jc_ratio = 0.0;           // eta omega_g / nu
  double resonance_ratio = 0.0;    // eta nu / omega_g
  double delta0_ratio = 0.0;       // eta^2 nu / delta_0
  double linear_regime_ratio = 0.0; // Delta / (eta omega_g)
  bool jc_pass = false, resonance_pass = false, delta0_pass = false, linear_pass = false;
  double threshold = 0.05;
};
ConstraintReport constraint_report(const MsPlan& plan, const TrapConfig& trap,
                                   double delta_zeeman, double threshold = 0.05);

// Entangling target U_T = exp((-i pi/4)(1 + sy1 sy2)) on the logical basis
// (|DD>, |D0'>, |0'D>, |0'0'>), with sy = -i|D><0'| + i|0'><D| per ion.
Operator target_unitary();

// F^2 correction 1 - (2 omega_g^2/(q+nu)^2) sin^2((q+nu) t); requires
// (q+nu)/omega_g >= 5.
double fidelity_oscillation(double omega_g, double q, double nu, double t);

// Bare-basis helpers on the composite space.
Matrix sigma_z_bare();                        // 4x4 |1><1| - |-1><-1|
Matrix two_ion_charge();                      // 16x16 sz1 + sz2
Vector two_ion_state(const Vector& ion1, const Vector& ion2, int fock_dim, int n = 0);
Vector logical_target_bell();                 // (|DD> + i|0'0'>)/sqrt(2), 16-dim qubit part

} // namespace xsim
