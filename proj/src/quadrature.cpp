#include "sectorlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <tuple>

namespace sectorlab {

std::string RuleKind::name() const {
  if (family == Family::Legendre) return "legendre";
  std::ostringstream os;
  os.precision(17);
  os << "jacobi(" << alpha << "," << beta << ")";
  return os.str();
}

QuadratureRule::QuadratureRule(RuleKind kind, std::vector<double> nodes, std::vector<double> weights)
    : kind_(kind), nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.empty() || nodes_.size() != weights_.size()) {
    throw Error(ErrorKind::InvalidArgument, "rule needs matching, non-empty node and weight arrays");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > 0.0 && nodes_[i] < 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "node " + std::to_string(nodes_[i]) + " outside (0,1)");
    }
    if (i > 0 && !(nodes_[i] > nodes_[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "nodes not strictly increasing");
    }
    if (!(weights_[i] > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "non-positive weight " + std::to_string(weights_[i]));
    }
  }
}

double QuadratureRule::weight_sum() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

// Implicit QL with Wilkinson-type shifts, tracking only the first row of the
// eigenvector matrix (all Golub-Welsch needs).
TridiagonalSpectrum tridiagonal_eig(std::vector<double> d, std::vector<double> off) {
  const std::size_t n = d.size();
  if (n == 0 || off.size() + 1 != n) {
    throw Error(ErrorKind::InvalidArgument, "tridiagonal_eig: need n diagonal and n-1 off-diagonal entries");
  }
  std::vector<double> e(n, 0.0);
  std::copy(off.begin(), off.end(), e.begin());
  std::vector<double> z(n, 0.0);
  z[0] = 1.0;

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m == l) break;
      if (++iter > 60) throw Error(ErrorKind::NoConvergence, "tridiagonal QL iteration cap");

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        const double zf = z[i + 1];
        z[i + 1] = s * z[i] + c * zf;
        z[i] = c * z[i] - s * zf;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });
  TridiagonalSpectrum out;
  out.values.reserve(n);
  out.first_components.reserve(n);
  for (std::size_t i : order) {
    out.values.push_back(d[i]);
    out.first_components.push_back(z[i]);
  }
  return out;
}

double euler_beta(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw Error(ErrorKind::InvalidParameters, "Beta function needs a, b > 0");
  if (a + b < 150.0) return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double beta_normalization(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw Error(ErrorKind::InvalidWeight, "lambda must lie in (0,1), got " + std::to_string(lambda));
  }
  return std::numbers::pi / std::sin(lambda * std::numbers::pi);
}

namespace {

void check_node_count(int n) {
  if (n < 1 || n > kMaxNodes) {
    throw Error(ErrorKind::InvalidNodeCount, "node count " + std::to_string(n) + " outside [1, " +
                                                 std::to_string(kMaxNodes) + "]");
  }
}

// Monic three-term recurrence of the Jacobi polynomials for (1-x)^alpha (1+x)^beta
// on [-1,1], shifted to t = (1+x)/2.
QuadratureRule golub_welsch(const RuleKind& kind, int n) {
  const double a = kind.alpha;
  const double b = kind.beta;
  const double ab = a + b;
  std::vector<double> diag(static_cast<std::size_t>(n));
  std::vector<double> off(static_cast<std::size_t>(n - 1));

  diag[0] = (b - a) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag[static_cast<std::size_t>(k)] = (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    double bk;
    if (k == 1) {
      // (k + a + b) cancels against (s - 1); written out so a + b = -1 is fine.
      bk = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      bk = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    off[static_cast<std::size_t>(k - 1)] = 0.5 * std::sqrt(bk);
  }
  for (auto& x : diag) x = 0.5 * (1.0 + x);

  TridiagonalSpectrum spec = tridiagonal_eig(std::move(diag), std::move(off));
  const double mu0 = euler_beta(b + 1.0, a + 1.0);

  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return spec.values[i] < spec.values[j]; });

  std::vector<double> nodes;
  std::vector<double> weights;
  nodes.reserve(order.size());
  weights.reserve(order.size());
  for (std::size_t i : order) {
    nodes.push_back(spec.values[i]);
    weights.push_back(mu0 * spec.first_components[i] * spec.first_components[i]);
  }
  return QuadratureRule(kind, std::move(nodes), std::move(weights));
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  check_node_count(n);
  return golub_welsch(RuleKind::legendre(), n);
}

QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
  if (!(alpha > -1.0 && beta > -1.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw Error(ErrorKind::InvalidParameters, "Jacobi parameters need alpha, beta > -1 (got " +
                                                  std::to_string(alpha) + ", " + std::to_string(beta) + ")");
  }
  check_node_count(n);
  return golub_welsch(RuleKind::jacobi(alpha, beta), n);
}

QuadratureRule make_rule(const RuleKind& kind, int n) {
  return kind.family == RuleKind::Family::Legendre ? gauss_legendre(n)
                                                   : gauss_jacobi(n, kind.alpha, kind.beta);
}

std::shared_ptr<const QuadratureRule> cached_rule(const RuleKind& kind, int n) {
  using Key = std::tuple<int, double, double, int>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const QuadratureRule>> cache;

  const Key key{static_cast<int>(kind.family), kind.alpha, kind.beta, n};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const QuadratureRule>(make_rule(kind, n));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

ComplexMatrix integrate_matrix(const QuadratureRule& rule, const MatrixIntegrand& f) {
  ComplexMatrix sum;
  for (std::size_t k = 0; k < rule.count(); ++k) {
    const double t = rule.nodes()[k];
    ComplexMatrix value;
    try {
      value = f(t);
    } catch (const Error& e) {
      throw EvaluationFailure(t, e.kind(), "integrand failed at t=" + std::to_string(t) + ": " + e.what());
    }
    if (!value.all_finite()) {
      throw EvaluationFailure(t, ErrorKind::InvalidArgument,
                              "integrand not finite at t=" + std::to_string(t));
    }
    value *= rule.weights()[k];
    if (k == 0) {
      sum = std::move(value);
    } else {
      sum += value;
    }
  }
  return sum;
}

IntegralResult integrate_adaptive(const MatrixIntegrand& f, const RuleKind& kind, double tol, int max_nodes) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "adaptive tolerance must be positive");
  check_node_count(max_nodes);
  int n = std::min(kAdaptiveStartNodes, max_nodes);
  ComplexMatrix previous = integrate_matrix(*cached_rule(kind, n), f);
  // Without a doubling the only available scale is the value itself.
  double estimate = frobenius_norm(previous);
  while (2 * n <= max_nodes) {
    n *= 2;
    ComplexMatrix current = integrate_matrix(*cached_rule(kind, n), f);
    estimate = frobenius_norm(current - previous);
    previous = std::move(current);
    if (estimate <= tol) return {std::move(previous), estimate, n};
  }
  std::ostringstream os;
  os << "no convergence to " << tol << " within " << max_nodes << " nodes (" << kind.name()
     << ", last difference " << estimate << ")";
  throw IntegrationNoConvergence(os.str(), {std::move(previous), estimate, n});
}

void QuadratureConfig::validate() const {
  if (rule_nodes < 1 || rule_nodes > kMaxNodes) {
    throw Error(ErrorKind::InvalidNodeCount, "rule_nodes " + std::to_string(rule_nodes) + " outside [1, " +
                                                 std::to_string(kMaxNodes) + "]");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be positive");
  check_node_count(max_nodes);
}

IntegralResult integrate(const MatrixIntegrand& f, const RuleKind& kind, const QuadratureConfig& cfg,
                         bool estimate_error) {
  cfg.validate();
  if (cfg.adaptive) return integrate_adaptive(f, kind, cfg.tol, cfg.max_nodes);
  ComplexMatrix value = integrate_matrix(*cached_rule(kind, cfg.rule_nodes), f);
  double estimate = 0.0;
  if (estimate_error && cfg.rule_nodes > 1) {
    const ComplexMatrix coarse = integrate_matrix(*cached_rule(kind, (cfg.rule_nodes + 1) / 2), f);
    estimate = frobenius_norm(value - coarse);
  }
  return {std::move(value), estimate, cfg.rule_nodes};
}

}  // namespace sectorlab
