#pragma once

#include "ou_noise.hpp"
#include "qops.hpp"

// Shared generators for randomized tests; seeded through xsim::Rng so runs
// are reproducible across platforms.

namespace xsim::test {

inline Matrix random_matrix(int dim, Rng& rng) {
  Matrix m(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) m(i, j) = Complex(rng.normal(), rng.normal());
  return m;
}

inline Matrix random_hermitian(int dim, Rng& rng) {
  const Matrix m = random_matrix(dim, rng);
  return 0.5 * (m + m.adjoint().eval());
}

inline Matrix random_density(int dim, Rng& rng) {
  const Matrix a = random_matrix(dim, rng);
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return rho;
}

inline Vector random_state(int dim, Rng& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(rng.normal(), rng.normal());
  v /= v.norm();
  return v;
}

} // namespace xsim::test
