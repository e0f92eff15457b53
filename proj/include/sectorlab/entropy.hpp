#pragma once

#include <span>
#include <vector>

#include "sectorlab/means.hpp"

namespace sectorlab {

struct EntropyConfig : QuadratureConfig {};

/// Relative operator entropy of accretive matrices,
///
///   S(A|B) = int_0^1 (A !_t B - A) / t dt,
///
/// by Gauss-Legendre. The integrand is evaluated as M(t)^-1 (I - B^-1 A) with
/// M(t) = (1-t) A^-1 + t B^-1, which is the same quantity without the 1/t
/// cancellation; its t -> 0 limit is A - A B^-1 A.
ComplexMatrix relative_entropy(const AccretiveMatrix& a, const AccretiveMatrix& b, const EntropyConfig& cfg = {});
IntegralResult relative_entropy_integral(const AccretiveMatrix& a, const AccretiveMatrix& b,
                                         const EntropyConfig& cfg = {});

/// Closed form A^1/2 log(A^-1/2 B A^-1/2) A^1/2.
HermitianMatrix relative_entropy_hpd(const HermitianMatrix& a, const HermitianMatrix& b);

/// Tsallis relative operator entropy from its own integral,
///
///   T_l(A|B) = sin(l pi)/(l pi) int_0^1 (t/(1-t))^l (A !_t B - A)/t dt,
///
/// with t^l (1-t)^-l as a Gauss-Jacobi(-l, l) weight.
ComplexMatrix tsallis_entropy(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w,
                              const EntropyConfig& cfg = {});
IntegralResult tsallis_entropy_integral(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w,
                                        const EntropyConfig& cfg = {});

/// (A #_l B - A) / l
ComplexMatrix tsallis_from_mean(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w,
                                const GeometricMeanConfig& cfg = {});

/// (A #_l B - A) / l with the closed-form mean, for positive definite inputs.
HermitianMatrix tsallis_entropy_hpd(const HermitianMatrix& a, const HermitianMatrix& b, Weight w);

/// The bounded integrand (A !_t B - A)/t shared by both entropies.
ComplexMatrix entropy_integrand(const ComplexMatrix& a, const ComplexMatrix& a_inv, const ComplexMatrix& b_inv,
                                double t);

struct LimitSample {
  double lambda = 0.0;
  double deviation = 0.0;  // ||T_lambda(A|B) - S(A|B)||_F
};

/// Deviation of the Tsallis entropy from the relative entropy along a
/// descending grid of lambdas in (0, 1/2].
std::vector<LimitSample> tsallis_limit_probe(const AccretiveMatrix& a, const AccretiveMatrix& b,
                                             std::span<const double> lambdas, const EntropyConfig& cfg = {});

}  // namespace sectorlab
