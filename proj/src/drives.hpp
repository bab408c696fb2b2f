#pragma once

#include "dressed_single.hpp"

#include <memory>
#include <string>

// A drive is an executable single-ion experiment: the field program over
// time, how the stochastic noise channels couple into it, and the ideal
// target state the run is scored against.

namespace xsim {

class SingleIonDrive {
 public:
  virtual ~SingleIonDrive() = default;

  virtual SingleQubitFields fields_at(double t) const = 0;
  virtual double duration() const = 0;
  // fastest angular frequency present, used to validate the integrator step
  virtual double max_angular_frequency() const = 0;

  // nominal Rabi frequencies that set the noise-process SDs
  virtual double nominal_omega() const = 0;
  virtual double nominal_omega_g() const = 0;

  // instantaneous envelope factors applied to the noise values; ramped
  // schedules scale the fractional source noise with their envelopes
  virtual double microwave_noise_scale(double) const { return 1.0; }
  virtual double rf_noise_scale(double) const { return 1.0; }

  // ideal end-of-run state for a given input
  virtual PureState target(const PureState& input) const = 0;

  virtual std::string name() const = 0;

  void fill(double t, double mu, double d_omega, double d_omega_g, Matrix& h) const {
    fill_hamiltonian(t, fields_at(t), mu, microwave_noise_scale(t) * d_omega,
                     rf_noise_scale(t) * d_omega_g, h);
  }
};

// Basic sigma-y (D) / sigma-x (B) gate at constant fields. Default duration
// is one pi-pulse. The target is the exact noise-free propagator applied to
// the input, so it is valid for any input state and duration.
class BasicGateDrive final : public SingleIonDrive {
 public:
  BasicGateDrive(QubitKind kind, double omega, double omega_g, double duration = 0.0);
  SingleQubitFields fields_at(double) const override { return fields_; }
  double duration() const override { return duration_; }
  double max_angular_frequency() const override;
  double nominal_omega() const override { return fields_.omega_minus; }
  double nominal_omega_g() const override { return fields_.omega_g; }
  PureState target(const PureState& input) const override;
  std::string name() const override { return "basic-gate"; }

 private:
  SingleQubitFields fields_;
  double duration_;
};

// Dressing fields only; used for dressed-state lifetime runs. Target is the
// input itself (|D> and |0'> sit at zero energy).
class DressingOnlyDrive final : public SingleIonDrive {
 public:
  DressingOnlyDrive(QubitKind kind, double omega, double duration);
  SingleQubitFields fields_at(double) const override { return fields_; }
  double duration() const override { return duration_; }
  double max_angular_frequency() const override;
  double nominal_omega() const override { return fields_.omega_minus; }
  double nominal_omega_g() const override { return 0.0; }
  PureState target(const PureState& input) const override { return input; }
  std::string name() const override { return "dressing-only"; }

 private:
  SingleQubitFields fields_;
  double duration_;
};

// Adiabatic population transfer between |D> and |B> by slow microwave-phase
// variation; the target carries the -pi/2 (+pi/2) Berry phase.
class TransferDrive final : public SingleIonDrive {
 public:
  TransferDrive(QubitKind from, double omega, double rate);
  SingleQubitFields fields_at(double t) const override;
  double duration() const override { return schedule_.duration; }
  double max_angular_frequency() const override;
  double nominal_omega() const override { return omega_; }
  double nominal_omega_g() const override { return 0.0; }
  PureState target(const PureState& input) const override;
  std::string name() const override { return "adiabatic-transfer"; }

 private:
  AdiabaticSchedule schedule_;
  double omega_;
};

// Adiabatic sigma-z gate along the (R1, R2) path; induces phase -x on |0'>.
// Both field envelopes are ramped, so the fractional noise channels are
// scaled with sin(R2) / cos(R2).
class SigmaZDrive final : public SingleIonDrive {
 public:
  SigmaZDrive(double x, double omega, double rate);
  SingleQubitFields fields_at(double t) const override;
  double duration() const override { return schedule_.duration; }
  double max_angular_frequency() const override;
  double nominal_omega() const override { return omega_; }
  double nominal_omega_g() const override { return omega_; }
  double microwave_noise_scale(double t) const override;
  double rf_noise_scale(double t) const override;
  PureState target(const PureState& input) const override;
  std::string name() const override { return "adiabatic-sigma-z"; }

 private:
  AdiabaticSchedule schedule_;
  double omega_;
};

// Stark-shift sigma-z gate (either variant); target applies the predicted
// qubit-space phase for the configured duration.
class StarkZDrive final : public SingleIonDrive {
 public:
  StarkZDrive(StarkVariant variant, const StarkParams& params, double duration);
  SingleQubitFields fields_at(double) const override { return config_.fields; }
  double duration() const override { return duration_; }
  double max_angular_frequency() const override;
  double nominal_omega() const override { return config_.fields.omega_minus; }
  double nominal_omega_g() const override { return config_.fields.omega_g; }
  double predicted_shift() const { return config_.predicted_shift; }
  PureState target(const PureState& input) const override;
  std::string name() const override { return variant_ == StarkVariant::kDressed ? "stark-z-dressed" : "stark-z-rf"; }

 private:
  StarkVariant variant_;
  StarkGateConfig config_;
  double duration_;
};

} // namespace xsim
