#pragma once

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "sectorlab/linalg.hpp"

namespace sectorlab::support {

inline constexpr Complex I{0.0, 1.0};

// The accretive pair used for frozen baselines.
inline ComplexMatrix pair_a() { return {{2.0, I}, {I, 2.0}}; }
inline ComplexMatrix pair_b() { return {{1.0, 1.0}, {-1.0, 1.0}}; }

inline ::testing::AssertionResult matrix_near(const ComplexMatrix& got, const ComplexMatrix& want, double tol) {
  if (got.dim() != want.dim()) {
    return ::testing::AssertionFailure() << "dim " << got.dim() << " vs " << want.dim();
  }
  const double d = frobenius_norm(got - want);
  if (d <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "Frobenius distance " << d << " > " << tol;
}

inline ::testing::AssertionResult matrix_rel_near(const ComplexMatrix& got, const ComplexMatrix& want, double tol) {
  const double d = relative_frobenius(got, want);
  if (d <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "relative Frobenius distance " << d << " > " << tol;
}

// Test-side generator, independent of the library's ensemble module.
inline ComplexMatrix gaussian_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

inline HermitianMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  return HermitianMatrix(gaussian_matrix(n, rng));
}

// G G^* + shift I
inline HermitianMatrix random_pd(std::size_t n, std::mt19937_64& rng, double shift = 0.5) {
  const ComplexMatrix g = gaussian_matrix(n, rng);
  return HermitianMatrix(g * g.adjoint() + shift * ComplexMatrix::identity(n));
}

}  // namespace sectorlab::support
