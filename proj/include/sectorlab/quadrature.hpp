#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sectorlab/linalg.hpp"

namespace sectorlab {

/// Which measure a rule integrates against on (0,1):
///   Legendre       dt
///   Jacobi(a, b)   t^b (1-t)^a dt
struct RuleKind {
  enum class Family { Legendre, Jacobi };

  Family family = Family::Legendre;
  double alpha = 0.0;
  double beta = 0.0;

  static RuleKind legendre() { return {}; }
  static RuleKind jacobi(double alpha, double beta) { return {Family::Jacobi, alpha, beta}; }

  std::string name() const;
  friend bool operator==(const RuleKind&, const RuleKind&) = default;
};

class QuadratureRule {
 public:
  QuadratureRule(RuleKind kind, std::vector<double> nodes, std::vector<double> weights);

  const RuleKind& kind() const noexcept { return kind_; }
  std::size_t count() const noexcept { return nodes_.size(); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double weight_sum() const;

 private:
  RuleKind kind_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

struct IntegralResult {
  ComplexMatrix value;
  double error_estimate = 0.0;
  int nodes_used = 0;
};

/// Thrown by integrate_adaptive when max_nodes is reached; carries the last result.
class IntegrationNoConvergence : public Error {
 public:
  IntegrationNoConvergence(const std::string& what, IntegralResult partial)
      : Error(ErrorKind::NoConvergence, what), partial_(std::move(partial)) {}

  const IntegralResult& partial() const noexcept { return partial_; }

 private:
  IntegralResult partial_;
};

/// Thrown by integrate_matrix when the integrand fails at a node.
class EvaluationFailure : public Error {
 public:
  EvaluationFailure(double node, ErrorKind cause, const std::string& what)
      : Error(ErrorKind::EvaluationFailure, what), node_(node), cause_(cause) {}

  double node() const noexcept { return node_; }
  ErrorKind cause() const noexcept { return cause_; }

 private:
  double node_;
  ErrorKind cause_;
};

inline constexpr int kMaxNodes = 4096;
inline constexpr int kAdaptiveStartNodes = 16;

QuadratureRule gauss_legendre(int n);

/// Golub-Welsch rule for weight t^beta (1-t)^alpha on (0,1).
QuadratureRule gauss_jacobi(int n, double alpha, double beta);

QuadratureRule make_rule(const RuleKind& kind, int n);

/// Shared, memoized rule. Safe to call from several threads.
std::shared_ptr<const QuadratureRule> cached_rule(const RuleKind& kind, int n);

/// Euler Beta function B(a, b).
double euler_beta(double a, double b);

/// B(lambda, 1 - lambda) = pi / sin(lambda pi).
double beta_normalization(double lambda);

using MatrixIntegrand = std::function<ComplexMatrix(double)>;

/// sum_k w_k f(t_k), accumulated in ascending node order.
ComplexMatrix integrate_matrix(const QuadratureRule& rule, const MatrixIntegrand& f);

/// Doubles the node count from 16 until two consecutive results agree to tol
/// (Frobenius). Throws IntegrationNoConvergence past max_nodes.
IntegralResult integrate_adaptive(const MatrixIntegrand& f, const RuleKind& kind, double tol,
                                  int max_nodes = kMaxNodes);

/// Node-count policy shared by the mean and entropy configurations.
struct QuadratureConfig {
  int rule_nodes = 64;
  bool adaptive = false;
  double tol = 1e-12;
  int max_nodes = kMaxNodes;

  void validate() const;
};

/// Fixed rule of cfg.rule_nodes nodes, or integrate_adaptive when cfg.adaptive.
/// With estimate_error in fixed mode, error_estimate is the difference to the
/// rule with half as many nodes (0 when only one node is used).
IntegralResult integrate(const MatrixIntegrand& f, const RuleKind& kind, const QuadratureConfig& cfg,
                         bool estimate_error = false);

/// Eigenvalues and first eigenvector components of a symmetric tridiagonal
/// matrix (implicit QL), eigenvalues ascending. diag has n entries, off has n-1.
struct TridiagonalSpectrum {
  std::vector<double> values;
  std::vector<double> first_components;
};
TridiagonalSpectrum tridiagonal_eig(std::vector<double> diag, std::vector<double> off);

}  // namespace sectorlab
