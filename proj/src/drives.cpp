#include "drives.hpp"

#include "units.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace xsim {

namespace {

const Complex kI(0.0, 1.0);

// exp(-i H t) psi for a Hermitian H
Vector evolve_exact(const Matrix& h, double t, const Vector& psi) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Vector phases =
      (-kI * t * es.eigenvalues().array().cast<Complex>()).exp().matrix();
  return es.eigenvectors() * (phases.asDiagonal() * (es.eigenvectors().adjoint() * psi));
}

double fields_omega_scale(const SingleQubitFields& f) {
  return f.omega_minus + f.omega_plus + f.omega_g + f.omega_z +
         std::max({std::abs(f.delta_minus), std::abs(f.delta_plus), std::abs(f.delta_z)});
}

} // namespace

BasicGateDrive::BasicGateDrive(QubitKind kind, double omega, double omega_g, double duration)
    : fields_(basic_gate_fields(kind, omega, omega_g)),
      duration_(duration > 0.0 ? duration : basic_gate_pi_time(omega_g)) {
  if (omega_g <= 0.0) throw std::invalid_argument("BasicGateDrive: omega_g must be > 0");
}

double BasicGateDrive::max_angular_frequency() const { return fields_omega_scale(fields_); }

PureState BasicGateDrive::target(const PureState& input) const {
  Matrix h(4, 4);
  fill_hamiltonian(0.0, fields_, 0.0, 0.0, 0.0, h);
  return PureState(evolve_exact(h, duration_, input.amplitudes()), true);
}

DressingOnlyDrive::DressingOnlyDrive(QubitKind kind, double omega, double duration)
    : fields_(basic_gate_fields(kind, omega, 0.0)), duration_(duration) {
  if (duration <= 0.0) throw std::invalid_argument("DressingOnlyDrive: duration must be > 0");
}

double DressingOnlyDrive::max_angular_frequency() const { return fields_omega_scale(fields_); }

TransferDrive::TransferDrive(QubitKind from, double omega, double rate)
    : schedule_(transfer_schedule(rate, from)), omega_(omega) {
  if (omega <= 0.0) throw std::invalid_argument("TransferDrive: omega must be > 0");
}

SingleQubitFields TransferDrive::fields_at(double t) const {
  SingleQubitFields f;
  f.omega_minus = f.omega_plus = omega_;
  f.theta_minus = 0.0;
  f.theta_plus = schedule_.theta_plus(t);
  return f;
}

double TransferDrive::max_angular_frequency() const { return omega_ * 2.0 + schedule_.rate; }

PureState TransferDrive::target(const PureState& input) const {
  const Vector d = state_d(), b = state_b(), zp = state_zero_prime();
  const Complex a_q = (schedule_.from == QubitKind::kD ? d : b).dot(input.amplitudes());
  const Complex a_zp = zp.dot(input.amplitudes());
  const Complex berry = std::exp(schedule_.from == QubitKind::kD ? -kI * (kPi / 2.0)
                                                                 : kI * (kPi / 2.0));
  Vector out = a_q * berry * (schedule_.from == QubitKind::kD ? b : d) + a_zp * zp;
  return PureState(std::move(out), true);
}

SigmaZDrive::SigmaZDrive(double x, double omega, double rate)
    : schedule_(sigmaz_path(x, rate)), omega_(omega) {
  if (omega <= 0.0) throw std::invalid_argument("SigmaZDrive: omega must be > 0");
}

SingleQubitFields SigmaZDrive::fields_at(double t) const {
  const auto [r1, r2] = schedule_.r_at(t);
  SingleQubitFields f;
  f.omega_minus = f.omega_plus = omega_ * std::sin(r2);
  f.theta_minus = f.theta_plus = r1;
  f.omega_g = omega_ * std::cos(r2);
  f.phi_minus = f.phi_plus = 0.0;
  return f;
}

double SigmaZDrive::max_angular_frequency() const { return omega_ * 2.0 + schedule_.rate; }

double SigmaZDrive::microwave_noise_scale(double t) const {
  return std::sin(schedule_.r_at(t)[1]);
}

double SigmaZDrive::rf_noise_scale(double t) const { return std::cos(schedule_.r_at(t)[1]); }

PureState SigmaZDrive::target(const PureState& input) const {
  const Vector d = state_d(), zp = state_zero_prime();
  const Complex a_d = d.dot(input.amplitudes());
  const Complex a_zp = zp.dot(input.amplitudes());
  Vector out = a_d * d + a_zp * std::exp(-kI * schedule_.x) * zp;
  return PureState(std::move(out), true);
}

StarkZDrive::StarkZDrive(StarkVariant variant, const StarkParams& params, double duration)
    : variant_(variant), config_(stark_sigmaz_fields(variant, params)), duration_(duration) {
  if (duration <= 0.0) throw std::invalid_argument("StarkZDrive: duration must be > 0");
}

double StarkZDrive::max_angular_frequency() const { return fields_omega_scale(config_.fields); }

PureState StarkZDrive::target(const PureState& input) const {
  const Vector d = state_d(), zp = state_zero_prime();
  const Complex a_d = d.dot(input.amplitudes());
  const Complex a_zp = zp.dot(input.amplitudes());
  const double s = config_.predicted_shift;
  Vector out;
  if (variant_ == StarkVariant::kDressed) {
    // shift acts on |0'> only
    out = a_d * d + a_zp * std::exp(-kI * s * duration_) * zp;
  } else {
    // differential shift: +s on |0'>, -s on |D>
    out = a_d * std::exp(kI * s * duration_) * d + a_zp * std::exp(-kI * s * duration_) * zp;
  }
  return PureState(std::move(out), true);
}

} // namespace xsim
