#include "dressed_single.hpp"

#include "units.hpp"

#include <cmath>
#include <stdexcept>

namespace xsim {

namespace {
const Complex kI(0.0, 1.0);
const double kSqrt2 = std::sqrt(2.0);
} // namespace

void fill_hamiltonian(double t, const SingleQubitFields& f, double mu, double d_omega,
                      double d_omega_g, Matrix& h) {
  // Omega_- - Omega_+ = d_omega for the stochastic channel; the static
  // mismatch knob enters with the opposite split (mismatch = Omega_+ - Omega_-).
  const double om_minus = f.omega_minus + 0.5 * d_omega - 0.5 * f.delta_omega_mismatch;
  const double om_plus = f.omega_plus - 0.5 * d_omega + 0.5 * f.delta_omega_mismatch;
  const double om_g = f.omega_g + d_omega_g;
  const double phi_minus = f.phi_minus + f.delta_phi_error;
  const double phi_plus = f.phi_plus + f.delta_phi_error;

  h.setZero(4, 4);
  auto put = [&h](int i, int j, Complex v) {
    h(i, j) += v;
    h(j, i) += std::conj(v);
  };
  put(kIdxZero, kIdxMinus1, 0.5 * om_minus * std::exp(-kI * f.theta_minus));
  put(kIdxZero, kIdxPlus1, 0.5 * om_plus * std::exp(-kI * f.theta_plus));
  put(kIdxMinus1, kIdxZeroPrime, 0.5 * om_g * std::exp(kI * (phi_minus - f.delta_minus * t)));
  put(kIdxZeroPrime, kIdxPlus1, 0.5 * om_g * std::exp(kI * (phi_plus - f.delta_plus * t)));
  put(kIdxZero, kIdxZeroPrime, 0.5 * f.omega_z * std::exp(kI * (f.delta_z * t - f.theta_z)));
  h(kIdxMinus1, kIdxMinus1) -= mu;
  h(kIdxPlus1, kIdxPlus1) += mu;
}

Operator hamiltonian_at(double t, const SingleQubitFields& fields, double mu, double d_omega,
                        double d_omega_g) {
  if (fields.omega_minus < 0 || fields.omega_plus < 0 || fields.omega_g < 0 || fields.omega_z < 0)
    throw std::invalid_argument("hamiltonian_at: Rabi frequencies must be >= 0");
  Matrix h(4, 4);
  fill_hamiltonian(t, fields, mu, d_omega, d_omega_g, h);
  return Operator(std::move(h));
}

Vector state_d() {
  Vector v = Vector::Zero(4);
  v(kIdxMinus1) = 1.0 / kSqrt2;
  v(kIdxPlus1) = -1.0 / kSqrt2;
  return v;
}

Vector state_b() {
  Vector v = Vector::Zero(4);
  v(kIdxMinus1) = 1.0 / kSqrt2;
  v(kIdxPlus1) = 1.0 / kSqrt2;
  return v;
}

Vector state_zero_prime() {
  Vector v = Vector::Zero(4);
  v(kIdxZeroPrime) = 1.0;
  return v;
}

Vector state_u(QubitKind kind) {
  Vector bright = kind == QubitKind::kD ? state_b() : state_d();
  Vector v = bright / kSqrt2;
  v(kIdxZero) += 1.0 / kSqrt2;
  return v;
}

Vector state_dn(QubitKind kind) {
  Vector bright = kind == QubitKind::kD ? state_b() : state_d();
  Vector v = bright / kSqrt2;
  v(kIdxZero) -= 1.0 / kSqrt2;
  return v;
}

DressedFrame DressedFrame::for_qubit(QubitKind kind) {
  Matrix map(4, 4);
  map.row(kU) = state_u(kind).adjoint();
  map.row(kDn) = state_dn(kind).adjoint();
  map.row(kQubit) = (kind == QubitKind::kD ? state_d() : state_b()).adjoint();
  map.row(kZeroPrime) = state_zero_prime().adjoint();
  return DressedFrame(kind, std::move(map));
}

Operator DressedFrame::to_dressed(const Operator& op) const {
  if (op.dim() != 4) throw std::invalid_argument("DressedFrame: operator must be 4x4");
  return Operator(map_ * op.matrix() * map_.adjoint());
}

PureState DressedFrame::to_dressed(const PureState& psi) const {
  if (psi.dim() != 4) throw std::invalid_argument("DressedFrame: state must have dim 4");
  return PureState(map_ * psi.amplitudes());
}

Operator DressedFrame::from_dressed(const Operator& op) const {
  return Operator(map_.adjoint() * op.matrix() * map_);
}

PureState DressedFrame::from_dressed(const PureState& psi) const {
  return PureState(map_.adjoint() * psi.amplitudes());
}

SingleQubitFields basic_gate_fields(QubitKind kind, double omega, double omega_g) {
  if (omega <= 0 || omega_g < 0)
    throw std::invalid_argument("basic_gate_fields: omega must be > 0, omega_g >= 0");
  SingleQubitFields f;
  f.omega_minus = f.omega_plus = omega;
  f.omega_g = omega_g;
  if (kind == QubitKind::kD) {
    f.theta_minus = f.theta_plus = 0.0;
    f.phi_minus = f.phi_plus = kPi / 2.0;
  } else {
    f.theta_minus = 0.0;
    f.theta_plus = kPi;
    f.phi_minus = f.phi_plus = 0.0;
  }
  return f;
}

double basic_gate_pi_time(double omega_g) { return kPi / (kSqrt2 * omega_g); }

double AdiabaticSchedule::theta_plus(double t) const {
  double s = rate * t;
  if (s < 0) s = 0;
  if (s > kPi) s = kPi;
  return from == QubitKind::kD ? s : kPi - s;
}

std::array<double, 2> AdiabaticSchedule::r_at(double t) const {
  const double half = kPi / 2.0;
  double s = rate * t;
  const double len = x + kPi;
  if (s < 0) s = 0;
  if (s > len) s = len;
  if (s <= x) return {s, half};                     // A -> B along R2 = pi/2
  if (s <= x + half) return {x, half - (s - x)};    // B -> C, R2 down to 0
  return {0.0, s - x - half};                       // D -> A after the frame jump
}

AdiabaticSchedule transfer_schedule(double rate, QubitKind from) {
  if (rate <= 0) throw std::invalid_argument("transfer_schedule: rate must be > 0");
  AdiabaticSchedule s;
  s.kind = AdiabaticSchedule::Kind::kTransfer;
  s.rate = rate;
  s.duration = kPi / rate;
  s.from = from;
  return s;
}

AdiabaticSchedule sigmaz_path(double x, double rate) {
  if (x <= 0 || x > kTwoPi) throw std::invalid_argument("sigmaz_path: x must lie in (0, 2pi]");
  if (rate <= 0) throw std::invalid_argument("sigmaz_path: rate must be > 0");
  AdiabaticSchedule s;
  s.kind = AdiabaticSchedule::Kind::kSigmaZ;
  s.rate = rate;
  s.x = x;
  s.duration = (x + kPi) / rate;
  return s;
}

std::vector<std::array<double, 2>> sigmaz_waypoints(double x, bool include_cd) {
  const double half = kPi / 2.0;
  std::vector<std::array<double, 2>> w;
  w.push_back({0.0, half});  // A
  w.push_back({x, half});    // B
  w.push_back({x, 0.0});     // C
  if (include_cd) w.push_back({0.0, 0.0}); // D
  else w.push_back({0.0, 0.0});            // frame jump lands at D with no phase integral
  w.push_back({0.0, half});  // back to A
  return w;
}

double berry_phase(std::span<const std::array<double, 2>> waypoints) {
  double phi = 0.0;
  for (size_t k = 1; k < waypoints.size(); ++k) {
    const double a1 = waypoints[k - 1][0], a2 = waypoints[k - 1][1];
    const double b1 = waypoints[k][0], b2 = waypoints[k][1];
    const double d1 = b1 - a1, d2 = b2 - a2;
    if (d1 == 0.0) continue;
    if (d2 == 0.0) {
      const double c = std::cos(a2);
      phi += d1 * c * c;
    } else {
      phi += d1 * (0.5 + (std::sin(2.0 * b2) - std::sin(2.0 * a2)) / (4.0 * d2));
    }
  }
  return phi;
}

StarkGateConfig stark_sigmaz_fields(StarkVariant variant, const StarkParams& p) {
  StarkGateConfig out;
  SingleQubitFields& f = out.fields;
  f.omega_minus = f.omega_plus = p.omega;
  if (variant == StarkVariant::kDressed) {
    const double gap = std::min(std::abs(p.omega + kSqrt2 * p.delta_z),
                                std::abs(p.omega - kSqrt2 * p.delta_z));
    if (p.omega_z > 0 && gap < p.min_ratio * p.omega_z)
      throw std::domain_error("stark_sigmaz_fields: |Omega +- sqrt(2) delta_z| >> Omega_z violated");
    f.omega_z = p.omega_z;
    f.delta_z = p.delta_z;
    const double den = 2.0 * p.omega * p.omega - 4.0 * p.delta_z * p.delta_z;
    out.predicted_shift = p.omega_z == 0 ? 0.0 : p.delta_z * p.omega_z * p.omega_z / den;
  } else {
    if (p.omega_g > 0 && std::abs(p.delta) < p.min_ratio * p.omega_g)
      throw std::domain_error("stark_sigmaz_fields: Omega_g << delta violated");
    f.omega_g = p.omega_g;
    f.phi_plus = kPi;
    f.phi_minus = 0.0;
    f.delta_plus = -p.delta;
    f.delta_minus = p.delta;
    out.predicted_shift = p.omega_g == 0 ? 0.0 : p.omega_g * p.omega_g / (2.0 * p.delta);
  }
  return out;
}

double NoiseBudget::total() const {
  double t = second_order_shift + gate_coupling_correction;
  for (double v : leakage_terms) t += v;
  return t;
}

NoiseBudget noise_budget(GateKind gate, double omega, double omega_g, double sd_mu,
                         double sd_delta_omega) {
  auto margin = [](double num, double den) {
    return den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
  };
  NoiseBudget b;
  if (gate == GateKind::kBasic) {
    if (omega == omega_g) throw std::domain_error("noise_budget: degenerate Omega = Omega_g");
    const double gap2 = std::abs(omega * omega - omega_g * omega_g);
    b.second_order_shift = sd_mu * omega * sd_delta_omega / (2.0 * gap2);
    b.gate_coupling_correction =
        (8.0 * sd_mu * sd_mu + sd_delta_omega * sd_delta_omega) * omega_g / (8.0 * kSqrt2 * gap2);
    const double amp = std::sqrt(8.0) * sd_mu + sd_delta_omega;
    const double amp3 = amp * amp * amp;
    b.leakage_terms = {omega * omega * amp3 / (32.0 * gap2 * gap2),
                       omega * omega_g * amp3 / (32.0 * gap2 * gap2)};
    b.constraint_margins = {margin(std::sqrt(gap2), sd_mu), margin(std::sqrt(gap2), sd_delta_omega)};
    return b;
  }
  const double om2 = omega * omega;
  const double mu3 = sd_mu * sd_mu * sd_mu;
  const double dO = sd_delta_omega;
  if (gate == GateKind::kTransfer) {
    b.second_order_shift = sd_mu * dO / omega;
    b.gate_coupling_correction = 0.0;
    b.leakage_terms = {mu3 / om2, sd_mu * sd_mu * dO / om2, sd_mu * dO * dO / om2,
                       dO * dO * dO / om2};
  } else {
    // sigma-z: first-order in-qubit coupling, second-order shift, and the
    // third-order terms that grow as Omega is reduced (the Omega_opt tradeoff)
    b.second_order_shift = sd_mu * dO / omega;
    b.gate_coupling_correction = dO / (4.0 * kSqrt2);
    b.leakage_terms = {dO * (8.0 * sd_mu * sd_mu + dO * dO) / (16.0 * kSqrt2 * om2),
                       mu3 / om2, sd_mu * sd_mu * dO / om2, sd_mu * dO * dO / om2,
                       dO * dO * dO / om2};
  }
  b.constraint_margins = {margin(omega, sd_mu), margin(omega, dO)};
  return b;
}

double gradient_shift(double eta, double nu) { return -eta * eta * nu; }

} // namespace xsim
