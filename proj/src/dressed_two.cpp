#include "dressed_two.hpp"

#include "units.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace xsim {

namespace {
const Complex kI(0.0, 1.0);
const double kSqrt2 = std::sqrt(2.0);
} // namespace

double effective_eta(const TrapConfig& trap) {
  if (trap.nu <= 0.0 || trap.ion_mass <= 0.0)
    throw std::invalid_argument("effective_eta: nu and ion mass must be > 0");
  const double dbeta_dz = kBohrResponse * trap.magnetic_gradient; // rad/(s m)
  const double zpt = std::sqrt(kHbar / (2.0 * trap.ion_mass * trap.nu)); // m
  const double kappa = dbeta_dz * trap.zeta * zpt;
  return kappa / trap.nu;
}

MsPlan ms_plan(int r, double eta, double omega_g, const DressingParams& dressing) {
  if (r < 1) throw std::invalid_argument("ms_plan: R must be >= 1");
  if (eta <= 0.0) throw std::invalid_argument("ms_plan: eta must be > 0 (missing gradient?)");
  if (omega_g <= 0.0) throw std::invalid_argument("ms_plan: omega_g must be > 0");
  MsPlan p;
  p.r = r;
  p.eta = eta;
  p.omega_g = omega_g;
  p.gate_time = kPi * std::sqrt(static_cast<double>(r)) / (kSqrt2 * eta * omega_g);
  p.q = 2.0 * std::sqrt(2.0 * r) * eta * omega_g;
  p.omega = dressing.omega;
  p.delta_0 = dressing.delta_0;
  p.omega_z = dressing.omega_z;
  p.delta_z = dressing.delta_z;
  return p;
}

Matrix sigma_z_bare() {
  Matrix s = Matrix::Zero(4, 4);
  s(kIdxPlus1, kIdxPlus1) = 1.0;
  s(kIdxMinus1, kIdxMinus1) = -1.0;
  return s;
}

Matrix two_ion_charge() {
  const Matrix sz = sigma_z_bare();
  const Matrix id = Matrix::Identity(4, 4);
  return tensor_product(Operator(sz), Operator(id)).matrix() +
         tensor_product(Operator(id), Operator(sz)).matrix();
}

Vector two_ion_state(const Vector& ion1, const Vector& ion2, int fock_dim, int n) {
  Vector fock = Vector::Zero(fock_dim);
  fock(n) = 1.0;
  return tensor_product(tensor_product(ion1, ion2), fock);
}

Vector logical_target_bell() {
  const Vector dd = tensor_product(state_d(), state_d());
  const Vector zz = tensor_product(state_zero_prime(), state_zero_prime());
  return (dd + kI * zz) / kSqrt2;
}

TwoIonHamiltonian::TwoIonHamiltonian(const MsPlan& plan, const TrapConfig& trap,
                                     bool phonon_rotating_frame, double mu1, double mu2)
    : fock_(trap.fock_dim), dim_(16 * trap.fock_dim), rotating_(phonon_rotating_frame) {
  if (trap.fock_dim < 1) throw std::invalid_argument("TwoIonHamiltonian: fock_dim must be >= 1");
  omega_g_ = plan.omega_g;
  nu_plus_q_ = trap.nu + plan.q;
  omega_z_half_ = 0.5 * plan.omega_z;
  delta_z_ = plan.delta_z;
  nu_ = trap.nu;
  kappa_ = plan.eta * trap.nu;

  base_ = Matrix::Zero(dim_, dim_);
  const double mu[2] = {mu1, mu2};

  // electronic index E = 4 e1 + e2; full index I = E fock + n
  auto idx = [this](int e1, int e2, int n) { return (4 * e1 + e2) * fock_ + n; };

  // static per-ion electronic terms, expanded over the spectator ion and Fock space
  for (int ion = 0; ion < 2; ++ion) {
    for (int other = 0; other < 4; ++other) {
      for (int n = 0; n < fock_; ++n) {
        auto at = [&](int a, int b) {
          return ion == 0 ? std::pair<int, int>{idx(a, other, n), idx(b, other, n)}
                          : std::pair<int, int>{idx(other, a, n), idx(other, b, n)};
        };
        auto put = [&](int a, int b, Complex v) {
          const auto [r, c] = at(a, b);
          base_(r, c) += v;
          if (r != c) base_(c, r) += std::conj(v);
        };
        // dressing legs, theta = 0
        put(kIdxZero, kIdxMinus1, 0.5 * plan.omega);
        put(kIdxZero, kIdxPlus1, 0.5 * plan.omega);
        // common dressing detuning
        put(kIdxZero, kIdxZero, 2.0 * plan.delta_0);
        // magnetic-noise term (static injection, off by default)
        put(kIdxPlus1, kIdxPlus1, mu[ion]);
        put(kIdxMinus1, kIdxMinus1, -mu[ion]);
      }
    }
  }

  // shared phonon energy (lab frame only)
  if (!rotating_) {
    for (int E = 0; E < 16; ++E)
      for (int n = 0; n < fock_; ++n) base_(E * fock_ + n, E * fock_ + n) += trap.nu * n;
  }

  // charge (sz1 + sz2) diagonal over electronic indices
  auto charge = [](int E) {
    auto sz = [](int e) { return e == kIdxPlus1 ? 1.0 : (e == kIdxMinus1 ? -1.0 : 0.0); };
    return sz(E / 4) + sz(E % 4);
  };

  // gradient coupling kappa (sz1+sz2)(b+ + b): static in the lab frame,
  // otherwise collected as the upper entries of (sz1+sz2) (x) b
  for (int E = 0; E < 16; ++E) {
    const double c = charge(E);
    if (c == 0.0) continue;
    for (int n = 1; n < fock_; ++n) {
      const int row = E * fock_ + n - 1, col = E * fock_ + n;
      const double w = c * std::sqrt(static_cast<double>(n));
      if (rotating_) {
        ladder_.push_back({row, col, w});
      } else {
        base_(row, col) += kappa_ * w;
        base_(col, row) += kappa_ * w;
      }
    }
  }

  // time-dependent per-ion legs: RF (both sideband fields combine into
  // omega_g cos((nu+q) t) on a real-symmetric operator) and the auxiliary
  // omega_z e^{i delta_z t} |0><0'| leg
  for (int ion = 0; ion < 2; ++ion) {
    for (int other = 0; other < 4; ++other) {
      for (int n = 0; n < fock_; ++n) {
        auto at = [&](int a, int b) {
          return ion == 0 ? std::pair<int, int>{idx(a, other, n), idx(b, other, n)}
                          : std::pair<int, int>{idx(other, a, n), idx(other, b, n)};
        };
        const auto [r1, c1] = at(kIdxZeroPrime, kIdxMinus1);
        rf_.push_back({r1, c1, 1.0});
        rf_.push_back({c1, r1, 1.0});
        const auto [r2, c2] = at(kIdxPlus1, kIdxZeroPrime);
        rf_.push_back({r2, c2, 1.0});
        rf_.push_back({c2, r2, 1.0});
        const auto [rz, cz] = at(kIdxZero, kIdxZeroPrime);
        zleg_.push_back({rz, cz, 1.0});
      }
    }
  }

  const double electronic =
      2.0 * (plan.omega + plan.omega_g + plan.omega_z + 2.0 * plan.delta_0) + 4.0 * kappa_;
  max_omega_ = electronic + delta_z_ + nu_plus_q_ + nu_;
  if (!rotating_) max_omega_ += trap.nu * (fock_ - 1);
}

void TwoIonHamiltonian::fill(double t, Matrix& h) const {
  h = base_;
  const double c_rf = omega_g_ * std::cos(nu_plus_q_ * t);
  for (const Entry& e : rf_) h(e.row, e.col) += c_rf * e.w;
  const Complex c_z = omega_z_half_ * std::exp(kI * (delta_z_ * t));
  for (const Entry& e : zleg_) {
    h(e.row, e.col) += c_z * e.w;
    h(e.col, e.row) += std::conj(c_z) * e.w;
  }
  if (rotating_) {
    // b -> b e^{-i nu t}; entries hold (sz1+sz2) (x) b weights on the upper triangle
    const Complex c_k = kappa_ * std::exp(-kI * (nu_ * t));
    for (const Entry& e : ladder_) {
      h(e.row, e.col) += c_k * e.w;
      h(e.col, e.row) += std::conj(c_k) * e.w;
    }
  }
}

Operator two_ion_hamiltonian_at(double t, const MsPlan& plan, const TrapConfig& trap) {
  TwoIonHamiltonian builder(plan, trap, false);
  Matrix h(builder.dim(), builder.dim());
  builder.fill(t, h);
  return Operator(std::move(h));
}

Operator sw_transform(const Operator& op, double eta, const Operator& charge_op) {
  const int dq = charge_op.dim();
  if (op.dim() % dq != 0)
    throw std::invalid_argument("sw_transform: operator dim not divisible by charge dim");
  const int fock = op.dim() / dq;
  Matrix ladder = Matrix::Zero(fock, fock); // b+ - b
  for (int n = 1; n < fock; ++n) {
    const double s = std::sqrt(static_cast<double>(n));
    ladder(n, n - 1) = s;
    ladder(n - 1, n) = -s;
  }
  const Matrix gen =
      eta * tensor_product(charge_op, Operator(ladder)).matrix(); // anti-Hermitian
  // exp(gen) through the Hermitian matrix i*gen
  Eigen::SelfAdjointEigenSolver<Matrix> es(kI * gen);
  const Vector phases = (-kI * es.eigenvalues().array().cast<Complex>()).exp().matrix();
  const Matrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return Operator(u * op.matrix() * u.adjoint());
}

double resonance_shift(double eta, double nu, double omega) {
  const double den = 2.0 * nu * nu - omega * omega;
  if (den == 0.0) throw std::domain_error("resonance_shift: 2 nu^2 = Omega^2 degeneracy");
  return -2.0 * eta * eta * nu * nu * nu / den;
}

ConstraintReport constraint_report(const MsPlan& plan, const TrapConfig& trap,
                                   double delta_zeeman, double threshold) {
  ConstraintReport r;
  r.threshold = threshold;
  const double eog = plan.eta * plan.omega_g;
  auto ratio = [](double num, double den) {
    return den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
  };
  r.jc_ratio = ratio(eog, trap.nu);
  r.resonance_ratio = ratio(plan.eta * trap.nu, plan.omega_g);
  r.delta0_ratio = ratio(plan.eta * plan.eta * trap.nu, plan.delta_0);
  r.linear_regime_ratio = ratio(delta_zeeman, eog);
  r.jc_pass = r.jc_ratio <= threshold;
  r.resonance_pass = r.resonance_ratio <= threshold;
  r.delta0_pass = r.delta0_ratio <= threshold;
  r.linear_pass = r.linear_regime_ratio <= threshold;
  return r;
}

Operator target_unitary() {
  Matrix sy(2, 2); // per-ion logical basis (|D>, |0'>)
  sy << 0.0, -kI, kI, 0.0;
  const Matrix syy = tensor_product(Operator(sy), Operator(sy)).matrix();
  const Matrix gen = Matrix::Identity(4, 4) + syy;
  Eigen::SelfAdjointEigenSolver<Matrix> es(gen);
  const Vector phases =
      (-kI * (kPi / 4.0) * es.eigenvalues().array().cast<Complex>()).exp().matrix();
  return Operator(es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint());
}

double fidelity_oscillation(double omega_g, double q, double nu, double t) {
  if (omega_g < 0.0) throw std::invalid_argument("fidelity_oscillation: omega_g must be >= 0");
  if (omega_g > 0.0 && (q + nu) < 5.0 * omega_g)
    throw std::domain_error("fidelity_oscillation: requires (q + nu)/omega_g >= 5");
  if (omega_g == 0.0) return 1.0;
  const double amp = 2.0 * omega_g * omega_g / ((q + nu) * (q + nu));
  const double s = std::sin((q + nu) * t);
  return 1.0 - amp * s * s;
}

} // namespace xsim
