#include "sectorlab/means.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sectorlab {

Weight::Weight(double lambda) : lambda_(lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw Error(ErrorKind::InvalidWeight, "lambda must lie in (0,1), got " + std::to_string(lambda));
  }
}

ComplexMatrix arithmetic_mean(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w) {
  require_same_dim(a.matrix(), b.matrix(), "arithmetic_mean");
  const double l = w.value();
  return (1.0 - l) * a.matrix() + l * b.matrix();
}

ComplexMatrix harmonic_mean(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w) {
  require_same_dim(a.matrix(), b.matrix(), "harmonic_mean");
  return harmonic_path(inverse(a.matrix()), inverse(b.matrix()), w.value());
}

ComplexMatrix harmonic_path(const ComplexMatrix& a_inv, const ComplexMatrix& b_inv, double t) {
  return inverse((1.0 - t) * a_inv + t * b_inv);
}

HermitianMatrix geometric_mean_hpd(const HermitianMatrix& a, const HermitianMatrix& b, Weight w) {
  require_same_dim(a.matrix(), b.matrix(), "geometric_mean_hpd");
  const HermitianMatrix a_half = hpd_power(a, 0.5);
  const HermitianMatrix a_neg_half = hpd_power(a, -0.5);
  const HermitianMatrix inner_term(a_neg_half.matrix() * b.matrix() * a_neg_half.matrix());
  const HermitianMatrix powered = hpd_power(inner_term, w.value());
  return HermitianMatrix(a_half.matrix() * powered.matrix() * a_half.matrix());
}

namespace {

IntegralResult geometric_quadrature(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w,
                                    const GeometricMeanConfig& cfg, bool estimate_error) {
  require_same_dim(a.matrix(), b.matrix(), "geometric_mean");
  const double l = w.value();
  const ComplexMatrix a_inv = inverse(a.matrix());
  const ComplexMatrix b_inv = inverse(b.matrix());
  // Kernel t^(l-1) (1-t)^(-l): Jacobi alpha = -l on (1-t), beta = l-1 on t.
  IntegralResult r = integrate([&](double t) { return harmonic_path(a_inv, b_inv, t); },
                               RuleKind::jacobi(-l, l - 1.0), cfg, estimate_error);
  const double scale = std::sin(l * std::numbers::pi) / std::numbers::pi;
  r.value *= scale;
  r.error_estimate *= scale;
  return r;
}

}  // namespace

IntegralResult geometric_mean_integral(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w,
                                       const GeometricMeanConfig& cfg) {
  return geometric_quadrature(a, b, w, cfg, true);
}

ComplexMatrix geometric_mean(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w,
                             const GeometricMeanConfig& cfg) {
  return geometric_quadrature(a, b, w, cfg, false).value;
}

namespace {

IntegralResult drury_quadrature(const AccretiveMatrix& a, const AccretiveMatrix& b, const GeometricMeanConfig& cfg,
                                bool estimate_error) {
  require_same_dim(a.matrix(), b.matrix(), "drury_mean");
  return integrate(
      [&](double s) {
        const double sn = std::sin(0.5 * std::numbers::pi * s);
        const double cs = std::cos(0.5 * std::numbers::pi * s);
        return inverse((sn * sn) * a.matrix() + (cs * cs) * b.matrix());
      },
      RuleKind::legendre(), cfg, estimate_error);
}

}  // namespace

IntegralResult drury_integral(const AccretiveMatrix& a, const AccretiveMatrix& b, const GeometricMeanConfig& cfg) {
  return drury_quadrature(a, b, cfg, true);
}

ComplexMatrix drury_mean(const AccretiveMatrix& a, const AccretiveMatrix& b, const GeometricMeanConfig& cfg) {
  return inverse(drury_quadrature(a, b, cfg, false).value);
}

double scalar_geometric(double alpha, double beta, Weight w) {
  if (!(alpha > 0.0 && beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw Error(ErrorKind::InvalidScalar,
                "scalar geometric mean needs positive arguments, got " + std::to_string(alpha) + ", " +
                    std::to_string(beta));
  }
  return std::pow(alpha, 1.0 - w.value()) * std::pow(beta, w.value());
}

}  // namespace sectorlab
