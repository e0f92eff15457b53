#pragma once

#include "sectorlab/linalg.hpp"
#include "sectorlab/quadrature.hpp"

namespace sectorlab {

/// Mean weight lambda, strictly inside (0,1).
class Weight {
 public:
  explicit Weight(double lambda);

  double value() const noexcept { return lambda_; }
  /// The weight 1 - lambda, used by the symmetry A #_l B = B #_{1-l} A.
  Weight complement() const { return Weight(1.0 - lambda_); }

  friend bool operator==(const Weight&, const Weight&) = default;

 private:
  double lambda_;
};

struct GeometricMeanConfig : QuadratureConfig {};

/// (1 - l) A + l B
ComplexMatrix arithmetic_mean(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w);

/// ((1 - l) A^-1 + l B^-1)^-1
ComplexMatrix harmonic_mean(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w);

/// Closed form A^1/2 (A^-1/2 B A^-1/2)^l A^1/2 for positive definite inputs.
HermitianMatrix geometric_mean_hpd(const HermitianMatrix& a, const HermitianMatrix& b, Weight w);

/// Weighted geometric mean of accretive matrices,
///
///   A #_l B = sin(l pi)/pi * int_0^1 t^(l-1) (1-t)^(-l) (A !_t B) dt,
///
/// with the Beta kernel absorbed into a Gauss-Jacobi(-l, l-1) rule so only the
/// smooth harmonic path A !_t B is sampled.
ComplexMatrix geometric_mean(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w,
                             const GeometricMeanConfig& cfg = {});

/// Same as geometric_mean, plus node count and an error estimate. In fixed
/// mode the estimate is the difference to a rule with half the nodes.
IntegralResult geometric_mean_integral(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w,
                                       const GeometricMeanConfig& cfg = {});

/// Drury's lambda = 1/2 mean
///
///   A # B = ( 2/pi int_0^inf (tA + B/t)^-1 dt/t )^-1.
///
/// u = t^2/(1+t^2) maps the half line onto (0,1) with a u^-1/2 (1-u)^-1/2
/// kernel; u = sin^2(pi s/2) then leaves the smooth integrand
/// (sin^2(pi s/2) A + cos^2(pi s/2) B)^-1 on (0,1), integrated with Legendre.
ComplexMatrix drury_mean(const AccretiveMatrix& a, const AccretiveMatrix& b,
                         const GeometricMeanConfig& cfg = {});

/// The integral inside drury_mean (before the outer inverse) with metadata.
IntegralResult drury_integral(const AccretiveMatrix& a, const AccretiveMatrix& b,
                              const GeometricMeanConfig& cfg = {});

/// alpha^(1-l) beta^l
double scalar_geometric(double alpha, double beta, Weight w);

/// A !_t B for t in [0,1] from precomputed inverses: ((1-t) A^-1 + t B^-1)^-1.
ComplexMatrix harmonic_path(const ComplexMatrix& a_inv, const ComplexMatrix& b_inv, double t);

}  // namespace sectorlab
