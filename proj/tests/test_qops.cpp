#include "qops.hpp"

#include "dressed_single.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace xsim;

TEST_CASE("tensor product identity and diagonal cases") {
  const Operator i2 = Operator::identity(2);
  const Operator i4 = tensor_product(i2, i2);
  CHECK(i4.dim() == 4);
  CHECK((i4.matrix() - Matrix::Identity(4, 4)).norm() == 0.0);

  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  const Operator zz = tensor_product(Operator(z), Operator(z));
  Eigen::Vector4d expected(1, -1, -1, 1);
  for (int i = 0; i < 4; ++i) CHECK(zz.matrix()(i, i).real() == expected(i));

  Rng rng(7, 0);
  const Operator a(test::random_matrix(4, rng));
  const Operator b(test::random_matrix(8, rng));
  CHECK(tensor_product(a, b).dim() == 32);
}

TEST_CASE("tensor product is associative to exact equality") {
  // integer-valued entries make every product exact, so equality is bitwise
  Rng rng(11, 0);
  auto int_matrix = [&](int dim) {
    Matrix m(dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int i = 0; i < dim; ++i)
        m(i, j) = Complex(std::floor(rng.uniform() * 9) - 4, std::floor(rng.uniform() * 9) - 4);
    return Operator(m);
  };
  const Operator a = int_matrix(2), b = int_matrix(3), c = int_matrix(2);
  const Matrix lhs = tensor_product(tensor_product(a, b), c).matrix();
  const Matrix rhs = tensor_product(a, tensor_product(b, c)).matrix();
  CHECK((lhs - rhs).norm() == 0.0);

  const Operator x(test::random_matrix(3, rng)), y(test::random_matrix(2, rng)),
      z(test::random_matrix(3, rng));
  const Matrix l2 = tensor_product(tensor_product(x, y), z).matrix();
  const Matrix r2 = tensor_product(x, tensor_product(y, z)).matrix();
  CHECK((l2 - r2).norm() < 1e-14 * l2.norm());
}

TEST_CASE("tensor product keeps the left factor outermost") {
  Matrix a(2, 2), b(2, 2);
  a << 0, 1, 0, 0; // |0><1|
  b << 1, 0, 0, 0; // |0><0|
  const Matrix k = tensor_product(Operator(a), Operator(b)).matrix();
  CHECK(k(0, 2).real() == 1.0); // (0*2+0, 1*2+0)
  CHECK(k.cwiseAbs().sum() == 1.0);
}

TEST_CASE("state fidelity identity, orthogonality, and the |-1> vs |D> overlap") {
  Rng rng(3, 0);
  const PureState psi(test::random_state(4, rng));
  const MixedState rho = MixedState::from_pure(psi);
  CHECK(state_fidelity(psi, rho) == doctest::Approx(1.0).epsilon(1e-12));

  // orthogonal complement via Gram-Schmidt
  Vector other = test::random_state(4, rng);
  other -= psi.amplitudes() * (psi.amplitudes().dot(other));
  other /= other.norm();
  // the quadratic form through an explicit density matrix floors near sqrt(eps)
  CHECK(state_fidelity(PureState(other), rho) < 1e-7);

  const MixedState rho_m1 = MixedState::from_pure(PureState::basis_state(4, kIdxMinus1));
  CHECK(state_fidelity(PureState(state_d()), rho_m1) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("state fidelity rejects dimension mismatch") {
  const PureState t = PureState::basis_state(2, 0);
  const MixedState rho = MixedState::from_pure(PureState::basis_state(4, 0));
  CHECK_THROWS_AS((void)state_fidelity(t, rho), std::invalid_argument);
}

TEST_CASE("fidelity of orthogonal targets never exceeds the total weight") {
  Rng rng(19, 0);
  for (int trial = 0; trial < 25; ++trial) {
    const MixedState rho = MixedState::unchecked(test::random_density(4, rng));
    const Vector a = test::random_state(4, rng);
    Vector b = test::random_state(4, rng);
    b -= a * a.dot(b);
    b /= b.norm();
    const double fa = state_fidelity(PureState(a), rho);
    const double fb = state_fidelity(PureState(b), rho);
    CHECK(fa * fa + fb * fb <= 1.0 + 1e-10);
  }
}

TEST_CASE("merit anchors and edge behavior") {
  CHECK(merit(0.9999) == doctest::Approx(-3.70).epsilon(0.01 / 3.70));
  CHECK(merit(0.999) == doctest::Approx(-2.70).epsilon(0.01 / 2.70));
  CHECK(merit(0.0) == 0.0);
  CHECK(merit(1.0) == -16.0);
  CHECK(merit(1.0, -12.0) == -12.0);
  CHECK_THROWS_AS((void)merit(1.5), std::invalid_argument);
  CHECK_THROWS_AS((void)merit(-0.1), std::invalid_argument);
}

TEST_CASE("merit is strictly decreasing on (0,1)") {
  double prev = merit(0.01);
  for (double f = 0.05; f < 1.0; f += 0.05) {
    const double m = merit(f);
    CHECK(m < prev);
    prev = m;
  }
}

TEST_CASE("hermitian assembler gives an exactly self-adjoint matrix") {
  Rng rng(23, 0);
  HermitianAssembler asmb(6);
  for (int k = 0; k < 30; ++k) {
    const int i = static_cast<int>(rng.uniform() * 6);
    const int j = static_cast<int>(rng.uniform() * 6);
    asmb.add(i, j, Complex(rng.normal(), rng.normal()));
  }
  asmb.add_diag(2, 1.25);
  const Matrix h = asmb.take().matrix();
  CHECK((h - h.adjoint()).norm() == 0.0);
}

TEST_CASE("partial trace over the phonon factor") {
  Rng rng(31, 0);
  const int qd = 4, fd = 6;

  SUBCASE("product state reduces to its qubit factor") {
    const Matrix rho_q = test::random_density(qd, rng);
    Matrix vac = Matrix::Zero(fd, fd);
    vac(0, 0) = 1.0;
    const Matrix joint = tensor_product(Operator(rho_q), Operator(vac)).matrix();
    const Matrix out = partial_trace_phonon(joint, qd, fd);
    CHECK((out - rho_q).norm() < 1e-14);
  }

  SUBCASE("maximally mixed stays maximally mixed") {
    const Matrix joint = Matrix::Identity(qd * fd, qd * fd) / (qd * fd);
    const Matrix out = partial_trace_phonon(joint, qd, fd);
    CHECK((out - Matrix::Identity(qd, qd) / qd).norm() < 1e-14);
  }

  SUBCASE("trace preserved and matches a projector-built oracle") {
    const Matrix joint = test::random_density(qd * fd, rng);
    const Matrix out = partial_trace_phonon(joint, qd, fd);
    CHECK(std::abs(out.trace().real() - 1.0) < 1e-10);
    // oracle: <i,n| rho |j,n> accumulated through explicit basis vectors
    Matrix oracle = Matrix::Zero(qd, qd);
    for (int i = 0; i < qd; ++i)
      for (int j = 0; j < qd; ++j)
        for (int n = 0; n < fd; ++n) {
          Vector bi = Vector::Zero(qd * fd), bj = Vector::Zero(qd * fd);
          bi(i * fd + n) = 1.0;
          bj(j * fd + n) = 1.0;
          oracle(i, j) += (bi.adjoint() * joint * bj)(0, 0);
        }
    CHECK((out - oracle).norm() < 1e-12);
  }

  SUBCASE("dimension mismatch is rejected") {
    const MixedState rho = MixedState::unchecked(test::random_density(12, rng));
    CHECK_THROWS_AS((void)partial_trace_phonon(rho, 5, 3), std::invalid_argument);
  }
}

TEST_CASE("state and operator validation") {
  Vector bad = Vector::Zero(3);
  bad(0) = 1.1;
  CHECK_THROWS_AS(PureState{bad}, std::invalid_argument);
  CHECK(PureState(bad, true).amplitudes().norm() == doctest::Approx(1.0));

  Matrix nonsquare(2, 3);
  CHECK_THROWS_AS(Operator{nonsquare}, std::invalid_argument);

  Rng rng(5, 0);
  Matrix h = test::random_hermitian(4, rng);
  CHECK(Operator(h).is_hermitian());
  h(0, 1) += Complex(0, 1e-6);
  CHECK_FALSE(Operator(h).is_hermitian());

  // trace != 1 rejected
  CHECK_THROWS_AS(MixedState{Matrix::Identity(4, 4)}, std::invalid_argument);
  // negative eigenvalue rejected
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(MixedState{neg}, std::invalid_argument);
}
