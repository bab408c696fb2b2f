#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

// Dense complex linear algebra over small composite Hilbert spaces
// (qubits (x) truncated phonon Fock space), plus the state-fidelity and
// merit metrics used by every experiment in the library.

namespace xsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// A dense operator on a Hilbert space of dimension dim(). Hamiltonians carry
// angular-frequency entries (rad/s, hbar = 1).
class Operator {
 public:
  explicit Operator(Matrix m);
  static Operator zero(int dim);
  static Operator identity(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Matrix& matrix() { return m_; }

  bool is_hermitian(double rel_tol = 1e-12) const;
  Operator dagger() const { return Operator(m_.adjoint()); }

 private:
  Matrix m_;
};

// Builds H = U + U^dag from a strictly-upper-triangular accumulation plus a
// real diagonal, so the result is Hermitian by construction, exactly.
class HermitianAssembler {
 public:
  explicit HermitianAssembler(int dim) : upper_(Matrix::Zero(dim, dim)), diag_(Eigen::VectorXd::Zero(dim)) {}

  // adds v |i><j| + conj(v) |j><i|; for i == j only the real part enters
  void add(int i, int j, Complex v);
  void add_diag(int i, double v) { diag_(i) += v; }

  Operator take() const;

 private:
  Matrix upper_; // strictly upper triangle
  Eigen::VectorXd diag_;
};

class PureState {
 public:
  // Throws unless |norm - 1| <= norm_tol (1e-10); renormalize=true rescales instead.
  explicit PureState(Vector amplitudes, bool renormalize = false);
  static PureState basis_state(int dim, int index);

  int dim() const { return static_cast<int>(amps_.rows()); }
  const Vector& amplitudes() const { return amps_; }
  Complex amplitude(int i) const { return amps_(i); }

 private:
  Vector amps_;
};

class MixedState {
 public:
  // Validates hermiticity (1e-10), unit trace (1e-8) and eigenvalues >= -1e-8.
  explicit MixedState(Matrix rho);
  static MixedState from_pure(const PureState& psi);
  // Skips the eigenvalue scan; used on propagation output where positivity is
  // monitored separately.
  static MixedState unchecked(Matrix rho);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Matrix& matrix() const { return rho_; }
  double min_eigenvalue() const;

 private:
  MixedState() = default;
  Matrix rho_;
};

// Kronecker product, a's index outermost: (a(x)b)[i*db+k, j*db+l] = a_ij b_kl.
Operator tensor_product(const Operator& a, const Operator& b);
Vector tensor_product(const Vector& a, const Vector& b);

// F = sqrt(<target|rho|target>), clamped to [0,1] against rounding.
double state_fidelity(const PureState& target, const MixedState& rho);
double state_fidelity(const PureState& target, const PureState& psi);

// M = log10(1 - F^2); f = 1 returns floor_value instead of -inf.
double merit(double f, double floor_value = -16.0);

// Traces out an innermost phonon factor: dim(rho) = qubit_dim * fock_dim.
MixedState partial_trace_phonon(const MixedState& rho, int qubit_dim, int fock_dim);
Matrix partial_trace_phonon(const Matrix& rho, int qubit_dim, int fock_dim);

} // namespace xsim
