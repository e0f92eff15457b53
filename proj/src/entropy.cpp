#include "sectorlab/entropy.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sectorlab {

ComplexMatrix entropy_integrand(const ComplexMatrix& a, const ComplexMatrix& a_inv, const ComplexMatrix& b_inv,
                                double t) {
  // (A !_t B - A)/t = M^-1 (I - M A)/t and I - M A = t (I - B^-1 A).
  const std::size_t n = a.dim();
  const ComplexMatrix m = (1.0 - t) * a_inv + t * b_inv;
  return inverse(m) * (ComplexMatrix::identity(n) - b_inv * a);
}

namespace {

MatrixIntegrand make_integrand(const AccretiveMatrix& a, const AccretiveMatrix& b, ComplexMatrix& a_inv,
                               ComplexMatrix& b_inv) {
  require_same_dim(a.matrix(), b.matrix(), "entropy");
  a_inv = inverse(a.matrix());
  b_inv = inverse(b.matrix());
  const std::size_t n = a.dim();
  // Precompute I - B^-1 A once; the per-node work is one inverse.
  ComplexMatrix defect = ComplexMatrix::identity(n) - b_inv * a.matrix();
  return [&a_inv, &b_inv, defect = std::move(defect)](double t) {
    return inverse((1.0 - t) * a_inv + t * b_inv) * defect;
  };
}

IntegralResult relative_quadrature(const AccretiveMatrix& a, const AccretiveMatrix& b, const EntropyConfig& cfg,
                                   bool estimate_error) {
  ComplexMatrix a_inv;
  ComplexMatrix b_inv;
  const MatrixIntegrand f = make_integrand(a, b, a_inv, b_inv);
  return integrate(f, RuleKind::legendre(), cfg, estimate_error);
}

IntegralResult tsallis_quadrature(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w,
                                  const EntropyConfig& cfg, bool estimate_error) {
  ComplexMatrix a_inv;
  ComplexMatrix b_inv;
  const MatrixIntegrand f = make_integrand(a, b, a_inv, b_inv);
  const double l = w.value();
  // Kernel t^l (1-t)^-l: Jacobi alpha = -l, beta = l.
  IntegralResult r = integrate(f, RuleKind::jacobi(-l, l), cfg, estimate_error);
  const double scale = std::sin(l * std::numbers::pi) / (l * std::numbers::pi);
  r.value *= scale;
  r.error_estimate *= scale;
  return r;
}

}  // namespace

IntegralResult relative_entropy_integral(const AccretiveMatrix& a, const AccretiveMatrix& b,
                                         const EntropyConfig& cfg) {
  return relative_quadrature(a, b, cfg, true);
}

ComplexMatrix relative_entropy(const AccretiveMatrix& a, const AccretiveMatrix& b, const EntropyConfig& cfg) {
  return relative_quadrature(a, b, cfg, false).value;
}

HermitianMatrix relative_entropy_hpd(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a.matrix(), b.matrix(), "relative_entropy_hpd");
  const HermitianMatrix a_half = hpd_power(a, 0.5);
  const HermitianMatrix a_neg_half = hpd_power(a, -0.5);
  const HermitianMatrix log_term = hpd_log(HermitianMatrix(a_neg_half.matrix() * b.matrix() * a_neg_half.matrix()));
  return HermitianMatrix(a_half.matrix() * log_term.matrix() * a_half.matrix());
}

IntegralResult tsallis_entropy_integral(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w,
                                        const EntropyConfig& cfg) {
  return tsallis_quadrature(a, b, w, cfg, true);
}

ComplexMatrix tsallis_entropy(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w,
                              const EntropyConfig& cfg) {
  return tsallis_quadrature(a, b, w, cfg, false).value;
}

ComplexMatrix tsallis_from_mean(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w,
                                const GeometricMeanConfig& cfg) {
  return (1.0 / w.value()) * (geometric_mean(a, b, w, cfg) - a.matrix());
}

HermitianMatrix tsallis_entropy_hpd(const HermitianMatrix& a, const HermitianMatrix& b, Weight w) {
  return HermitianMatrix((1.0 / w.value()) * (geometric_mean_hpd(a, b, w).matrix() - a.matrix()));
}

std::vector<LimitSample> tsallis_limit_probe(const AccretiveMatrix& a, const AccretiveMatrix& b,
                                             std::span<const double> lambdas, const EntropyConfig& cfg) {
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0 && lambdas[i] <= 0.5)) {
      throw Error(ErrorKind::InvalidWeight, "limit probe lambdas must lie in (0, 1/2], got " +
                                                std::to_string(lambdas[i]));
    }
    if (i > 0 && !(lambdas[i] < lambdas[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "limit probe lambdas must be strictly descending");
    }
  }
  const ComplexMatrix s = relative_entropy(a, b, cfg);
  std::vector<LimitSample> out;
  out.reserve(lambdas.size());
  for (double l : lambdas) {
    out.push_back({l, frobenius_norm(tsallis_entropy(a, b, Weight(l), cfg) - s)});
  }
  return out;
}

}  // namespace sectorlab
