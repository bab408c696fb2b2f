#pragma once

#include "qops.hpp"

#include <array>
#include <span>
#include <vector>

// Single-ion four-level system in the interaction picture: Hamiltonian
// assembly in the bare basis, dressed-basis transforms, the basic gate field
// configurations, adiabatic parameter paths, Berry-phase evaluation and the
// closed-form perturbative noise budgets.
//
// Bare basis ordering is fixed as (|-1>, |0>, |0'>, |+1>); this keeps the
// magnetic-noise term diagonal.

namespace xsim {

inline constexpr int kIdxMinus1 = 0;
inline constexpr int kIdxZero = 1;
inline constexpr int kIdxZeroPrime = 2;
inline constexpr int kIdxPlus1 = 3;

enum class QubitKind { kD, kB };

// Full field configuration of the four-level system. Rabi frequencies and
// detunings in rad/s, phases in radians. delta_omega_mismatch is the static
// Omega_+ - Omega_- imbalance knob; delta_phi_error is a static offset added
// to both RF phases.
struct SingleQubitFields {
  double omega_minus = 0.0;
  double omega_plus = 0.0;
  double theta_minus = 0.0;
  double theta_plus = 0.0;
  double theta_z = 0.0;
  double omega_g = 0.0;
  double phi_minus = 0.0;
  double phi_plus = 0.0;
  double delta_minus = 0.0;
  double delta_plus = 0.0;
  double delta_z = 0.0;
  double omega_z = 0.0;
  double delta_omega_mismatch = 0.0;
  double delta_phi_error = 0.0;
};

// Interaction-picture Hamiltonian with instantaneous noise values substituted:
// the microwave legs use Omega -+ delta_omega/2 (plus the static mismatch
// knob), the RF legs use omega_g + d_omega_g, and mu enters as
// mu (|1><1| - |-1><-1|). Hermitian by construction.
Operator hamiltonian_at(double t, const SingleQubitFields& fields, double mu = 0.0,
                        double d_omega = 0.0, double d_omega_g = 0.0);
void fill_hamiltonian(double t, const SingleQubitFields& fields, double mu,
                      double d_omega, double d_omega_g, Matrix& h);

// Basis change between the bare basis and the dressed set {u, d, D-or-B, 0'}.
class DressedFrame {
 public:
  static DressedFrame for_qubit(QubitKind kind);

  QubitKind qubit_kind() const { return kind_; }
  // rows are the dressed bras in bare coordinates
  const Matrix& basis_map() const { return map_; }

  Operator to_dressed(const Operator& op) const;
  PureState to_dressed(const PureState& psi) const;
  Operator from_dressed(const Operator& op) const;
  PureState from_dressed(const PureState& psi) const;

  // dressed index order
  static constexpr int kU = 0;
  static constexpr int kDn = 1;
  static constexpr int kQubit = 2; // |D> or |B>
  static constexpr int kZeroPrime = 3;

 private:
  DressedFrame(QubitKind kind, Matrix map) : kind_(kind), map_(std::move(map)) {}
  QubitKind kind_;
  Matrix map_;
};

// Bare-basis amplitudes of the named states.
Vector state_d();
Vector state_b();
Vector state_zero_prime();
Vector state_u(QubitKind kind);
Vector state_dn(QubitKind kind);

// Field configuration of the basic sigma-y (D-qubit) / sigma-x (B-qubit) gate.
SingleQubitFields basic_gate_fields(QubitKind kind, double omega, double omega_g);

// t_pi = pi / (sqrt(2) omega_g): one full Rabi flop of the basic gate.
double basic_gate_pi_time(double omega_g);

// Time-dependent parameter paths for the adiabatic operations.
struct AdiabaticSchedule {
  enum class Kind { kTransfer, kSigmaZ };
  Kind kind = Kind::kTransfer;
  double rate = 0.0;     // rad/s of parameter motion
  double duration = 0.0; // path length / rate
  double x = 0.0;        // sigma-z phase parameter
  QubitKind from = QubitKind::kD; // transfer start

  // transfer: microwave phase theta_+(t)
  double theta_plus(double t) const;
  // sigma-z: adiabatic variables (R1, R2)(t); the C->D segment is jumped
  std::array<double, 2> r_at(double t) const;
};

AdiabaticSchedule transfer_schedule(double rate, QubitKind from);
AdiabaticSchedule sigmaz_path(double x, double rate);

// Waypoints of the sigma-z parameter path; include_cd adds the C->D segment
// the executed schedule omits.
std::vector<std::array<double, 2>> sigmaz_waypoints(double x, bool include_cd = false);

// Berry phase of a piecewise-linear path in the (R1, R2) plane:
// Phi = Int cos^2(R2) dR1, closed form per segment.
double berry_phase(std::span<const std::array<double, 2>> waypoints);

// Stark-shift sigma-z gate configurations (dressed |0>-|0'> route and the
// two-RF-field route), with the predicted qubit-space shift.
enum class StarkVariant { kDressed, kRf };
struct StarkParams {
  double omega = 0.0;   // dressing Rabi frequency
  double omega_z = 0.0; // dressed variant: |0>-|0'> coupling
  double delta_z = 0.0; // dressed variant: coupling detuning
  double omega_g = 0.0; // rf variant: RF Rabi frequency
  double delta = 0.0;   // rf variant: RF detuning
  double min_ratio = 10.0; // constraint-ratio threshold
};
struct StarkGateConfig {
  SingleQubitFields fields;
  double predicted_shift = 0.0; // rad/s
};
StarkGateConfig stark_sigmaz_fields(StarkVariant variant, const StarkParams& params);

// Closed-form perturbative noise-budget magnitudes with the process SDs
// substituted for the instantaneous noise values.
enum class GateKind { kBasic, kTransfer, kSigmaZ };
struct NoiseBudget {
  double second_order_shift = 0.0;       // qubit-space energy shift
  double gate_coupling_correction = 0.0; // correction to the gate coupling
  std::vector<double> leakage_terms;     // higher-order leakage magnitudes
  std::vector<double> constraint_margins; // ratios; > 1 marks the regime of validity
  double total() const;
};
NoiseBudget noise_budget(GateKind gate, double omega, double omega_g, double sd_mu,
                         double sd_delta_omega);

// Second-order phonon contribution of the static gradient: -eta^2 nu on |D>.
double gradient_shift(double eta, double nu);

} // namespace xsim
