#include "qops.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace xsim {

Operator::Operator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    throw std::invalid_argument("Operator: matrix must be square and non-empty");
}

Operator Operator::zero(int dim) { return Operator(Matrix::Zero(dim, dim)); }
Operator Operator::identity(int dim) { return Operator(Matrix::Identity(dim, dim)); }

bool Operator::is_hermitian(double rel_tol) const {
  const double scale = m_.norm();
  const double dev = (m_ - m_.adjoint()).norm();
  return dev <= rel_tol * (scale > 0 ? scale : 1.0);
}

void HermitianAssembler::add(int i, int j, Complex v) {
  if (i == j) {
    diag_(i) += v.real();
  } else if (i < j) {
    upper_(i, j) += v;
  } else {
    upper_(j, i) += std::conj(v);
  }
}

Operator HermitianAssembler::take() const {
  Matrix h = upper_;
  h += upper_.adjoint().eval();
  h += diag_.cast<Complex>().asDiagonal();
  return Operator(std::move(h));
}

PureState::PureState(Vector amplitudes, bool renormalize) : amps_(std::move(amplitudes)) {
  if (amps_.rows() < 1) throw std::invalid_argument("PureState: empty amplitude vector");
  const double n = amps_.norm();
  if (renormalize) {
    if (n == 0.0) throw std::invalid_argument("PureState: cannot normalize the zero vector");
    amps_ /= n;
  } else if (std::abs(n - 1.0) > 1e-10) {
    throw std::invalid_argument("PureState: vector is not normalized");
  }
}

PureState PureState::basis_state(int dim, int index) {
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

MixedState::MixedState(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 1)
    throw std::invalid_argument("MixedState: matrix must be square");
  const double scale = rho_.norm() > 0 ? rho_.norm() : 1.0;
  if ((rho_ - rho_.adjoint()).norm() > 1e-10 * scale)
    throw std::invalid_argument("MixedState: matrix is not Hermitian");
  if (std::abs(rho_.trace().real() - 1.0) > 1e-8 || std::abs(rho_.trace().imag()) > 1e-8)
    throw std::invalid_argument("MixedState: trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8)
    throw std::invalid_argument("MixedState: negative eigenvalue");
}

MixedState MixedState::from_pure(const PureState& psi) {
  MixedState rho;
  rho.rho_ = psi.amplitudes() * psi.amplitudes().adjoint();
  return rho;
}

MixedState MixedState::unchecked(Matrix rho) {
  MixedState out;
  out.rho_ = std::move(rho);
  return out;
}

double MixedState::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Operator tensor_product(const Operator& a, const Operator& b) {
  const int da = a.dim(), db = b.dim();
  Matrix out(da * db, da * db);
  for (int j = 0; j < da; ++j)
    for (int i = 0; i < da; ++i)
      out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
  return Operator(std::move(out));
}

Vector tensor_product(const Vector& a, const Vector& b) {
  const int da = static_cast<int>(a.rows()), db = static_cast<int>(b.rows());
  Vector out(da * db);
  for (int i = 0; i < da; ++i) out.segment(i * db, db) = a(i) * b;
  return out;
}

double state_fidelity(const PureState& target, const MixedState& rho) {
  if (target.dim() != rho.dim())
    throw std::invalid_argument("state_fidelity: dimension mismatch");
  const Complex p = target.amplitudes().adjoint() * rho.matrix() * target.amplitudes();
  double f2 = p.real();
  if (f2 < 0.0) f2 = 0.0;
  if (f2 > 1.0) f2 = 1.0;
  return std::sqrt(f2);
}

double state_fidelity(const PureState& target, const PureState& psi) {
  if (target.dim() != psi.dim())
    throw std::invalid_argument("state_fidelity: dimension mismatch");
  const double f = std::abs(target.amplitudes().dot(psi.amplitudes()));
  return f > 1.0 ? 1.0 : f;
}

double merit(double f, double floor_value) {
  if (f < 0.0 || f > 1.0) throw std::invalid_argument("merit: fidelity outside [0,1]");
  const double infid = 1.0 - f * f;
  if (infid <= 0.0) return floor_value;
  const double m = std::log10(infid);
  return m < floor_value ? floor_value : m;
}

Matrix partial_trace_phonon(const Matrix& rho, int qubit_dim, int fock_dim) {
  if (rho.rows() != static_cast<long>(qubit_dim) * fock_dim)
    throw std::invalid_argument("partial_trace_phonon: dimension does not factor");
  Matrix out = Matrix::Zero(qubit_dim, qubit_dim);
  for (int j = 0; j < qubit_dim; ++j)
    for (int i = 0; i < qubit_dim; ++i)
      for (int n = 0; n < fock_dim; ++n)
        out(i, j) += rho(i * fock_dim + n, j * fock_dim + n);
  return out;
}

MixedState partial_trace_phonon(const MixedState& rho, int qubit_dim, int fock_dim) {
  return MixedState::unchecked(partial_trace_phonon(rho.matrix(), qubit_dim, fock_dim));
}

} // namespace xsim
