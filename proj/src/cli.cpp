#include "sectorlab/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sectorlab/entropy.hpp"
#include "sectorlab/io.hpp"
#include "sectorlab/means.hpp"
#include "sectorlab/quadrature.hpp"
#include "sectorlab/verify.hpp"

namespace sectorlab {

namespace {

/// Bad flag combination or value; maps to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureFlags {
  int nodes = 64;
  bool adaptive = false;
  double tol = 1e-12;
};

struct MatrixCommand {
  std::string kind;
  std::optional<double> lambda;
  std::string a_path;
  std::string b_path;
  QuadratureFlags quad;
  std::string out = "-";
  bool no_validate = false;
};

struct VerifyCommand {
  std::size_t dim = 3;
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  double angle = 0.4;
  std::vector<double> lambdas{0.1, 0.5, 0.9};
  std::vector<std::string> only;
  std::string report = "-";
  unsigned threads = 1;
};

struct RuleCommand {
  std::string kind;
  std::optional<double> lambda;
  int nodes = 64;
};

void add_quadrature_flags(CLI::App* cmd, QuadratureFlags& q) {
  cmd->add_option("--nodes", q.nodes, "Quadrature nodes (fixed mode)")->capture_default_str();
  cmd->add_flag("--adaptive", q.adaptive, "Double the node count until converged to --tol");
  cmd->add_option("--tol", q.tol, "Adaptive tolerance (Frobenius)")->capture_default_str();
}

void add_matrix_flags(CLI::App* cmd, MatrixCommand& c) {
  cmd->add_option("--lambda", c.lambda, "Weight in (0,1)");
  cmd->add_option("--a", c.a_path, "First matrix (JSON MatrixFile)")->required();
  cmd->add_option("--b", c.b_path, "Second matrix (JSON MatrixFile)")->required();
  add_quadrature_flags(cmd, c.quad);
  cmd->add_option("--out", c.out, "Output path, '-' for stdout")->capture_default_str();
  cmd->add_flag("--no-validate", c.no_validate, "Skip the accretivity check on inputs");
}

template <class Config>
Config quadrature_config(const QuadratureFlags& q) {
  Config cfg;
  cfg.rule_nodes = q.nodes;
  cfg.adaptive = q.adaptive;
  cfg.tol = q.tol;
  if (q.nodes < 1 || q.nodes > kMaxNodes) {
    throw UsageError("--nodes must lie in [1, " + std::to_string(kMaxNodes) + "]");
  }
  if (!(q.tol > 0.0)) throw UsageError("--tol must be positive");
  return cfg;
}

Weight require_lambda(const std::optional<double>& lambda, const std::string& kind) {
  if (!lambda) throw UsageError("--lambda is required for kind '" + kind + "'");
  if (!(*lambda > 0.0 && *lambda < 1.0)) {
    throw UsageError("--lambda must lie in (0,1), got " + std::to_string(*lambda));
  }
  return Weight(*lambda);
}

AccretiveMatrix load_operand(const std::string& path, bool no_validate) {
  ComplexMatrix m = read_matrix_file(path);
  return no_validate ? AccretiveMatrix::unchecked(std::move(m)) : AccretiveMatrix(std::move(m));
}

void emit(const Json& doc, const std::string& path, std::ostream& out) {
  const std::string text = dump_json(doc) + "\n";
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write " + path);
  file << text;
}

Json result_document(const ComplexMatrix& value, const std::string& kind, std::optional<double> lambda,
                     int nodes_used, double error_estimate) {
  Json doc = matrix_to_json(value);
  Json meta;
  meta["kind"] = kind;
  meta["lambda"] = lambda ? Json(*lambda) : Json(nullptr);
  meta["nodes_used"] = nodes_used;
  meta["error_estimate"] = error_estimate;
  doc["metadata"] = std::move(meta);
  return doc;
}

int cmd_mean(const MatrixCommand& c, std::ostream& out) {
  const auto cfg = quadrature_config<GeometricMeanConfig>(c.quad);
  std::optional<Weight> w;
  if (c.kind != "drury") w = require_lambda(c.lambda, c.kind);
  const AccretiveMatrix a = load_operand(c.a_path, c.no_validate);
  const AccretiveMatrix b = load_operand(c.b_path, c.no_validate);
  if (a.dim() != b.dim()) throw UsageError("--a and --b have different dimensions");

  if (c.kind == "arith") {
    emit(result_document(arithmetic_mean(a, b, *w), c.kind, w->value(), 0, 0.0), c.out, out);
  } else if (c.kind == "harm") {
    emit(result_document(harmonic_mean(a, b, *w), c.kind, w->value(), 0, 0.0), c.out, out);
  } else if (c.kind == "geom") {
    const IntegralResult r = geometric_mean_integral(a, b, *w, cfg);
    emit(result_document(r.value, c.kind, w->value(), r.nodes_used, r.error_estimate), c.out, out);
  } else {
    const IntegralResult r = drury_integral(a, b, cfg);
    emit(result_document(inverse(r.value), c.kind, 0.5, r.nodes_used, r.error_estimate), c.out, out);
  }
  return kExitSuccess;
}

int cmd_entropy(const MatrixCommand& c, std::ostream& out) {
  const auto cfg = quadrature_config<EntropyConfig>(c.quad);
  std::optional<Weight> w;
  if (c.kind == "tsallis") w = require_lambda(c.lambda, c.kind);
  const AccretiveMatrix a = load_operand(c.a_path, c.no_validate);
  const AccretiveMatrix b = load_operand(c.b_path, c.no_validate);
  if (a.dim() != b.dim()) throw UsageError("--a and --b have different dimensions");

  if (c.kind == "relative") {
    const IntegralResult r = relative_entropy_integral(a, b, cfg);
    emit(result_document(r.value, c.kind, std::nullopt, r.nodes_used, r.error_estimate), c.out, out);
  } else {
    // (A #_l B - A)/l, the mean's quadrature metadata scaled accordingly.
    GeometricMeanConfig mean_cfg;
    static_cast<QuadratureConfig&>(mean_cfg) = cfg;
    const IntegralResult g = geometric_mean_integral(a, b, *w, mean_cfg);
    const double l = w->value();
    emit(result_document((1.0 / l) * (g.value - a.matrix()), c.kind, l, g.nodes_used, g.error_estimate / l), c.out,
         out);
  }
  return kExitSuccess;
}

int cmd_verify(const VerifyCommand& c, std::ostream& out, std::ostream& err) {
  if (!(c.angle >= 0.0 && c.angle < 1.0)) {
    throw UsageError("--angle is a fraction of pi/2 and must lie in [0, 1), got " + std::to_string(c.angle));
  }
  if (c.dim < 1 || c.dim > kMaxDim) throw UsageError("--dim must lie in [1, " + std::to_string(kMaxDim) + "]");
  if (c.trials < 1) throw UsageError("--trials must be >= 1");
  if (c.lambdas.empty()) throw UsageError("--lambdas is empty");
  if (c.threads < 1) throw UsageError("--threads must be >= 1");

  EnsembleSpec spec;
  spec.dim = c.dim;
  spec.trials = c.trials;
  spec.seed = c.seed;
  spec.sector_angle = c.angle * std::numbers::pi / 2.0;
  spec.lambda_grid.clear();
  for (double l : c.lambdas) {
    if (!(l > 0.0 && l < 1.0)) throw UsageError("--lambdas entries must lie in (0,1), got " + std::to_string(l));
    spec.lambda_grid.emplace_back(l);
  }
  const auto& known = property_ids();
  for (const auto& id : c.only) {
    if (std::find(known.begin(), known.end(), id) == known.end()) {
      throw UsageError("--only: unknown property id '" + id + "'");
    }
  }

  VerifyOptions opts;
  opts.threads = c.threads;
  const std::vector<PropertyReport> reports = run_selected(spec, c.only, opts);
  emit(verify_document(spec, reports), c.report, out);

  bool violated = false;
  bool unconverged = false;
  for (const auto& r : reports) {
    err << r.property_id << ": " << to_string(r.status) << " (" << r.violations << "/" << r.trials
        << " violations, worst margin " << r.worst_margin << ")";
    if (!r.detail.empty()) err << " " << r.detail;
    err << "\n";
    if (!r.theorem_backed()) continue;
    if (r.status == ReportStatus::Violations) violated = true;
    if (r.status == ReportStatus::Error) {
      if (r.error_kind == ErrorKind::NoConvergence) {
        unconverged = true;
      } else {
        violated = true;
      }
    }
  }
  if (violated) return kExitViolations;
  if (unconverged) return kExitNoConvergence;
  return kExitSuccess;
}

int cmd_rule(const RuleCommand& c, std::ostream& out) {
  if (c.nodes < 1 || c.nodes > kMaxNodes) {
    throw UsageError("--nodes must lie in [1, " + std::to_string(kMaxNodes) + "]");
  }
  if (c.kind == "legendre") {
    emit(rule_to_json(gauss_legendre(c.nodes)), "-", out);
  } else {
    const Weight w = require_lambda(c.lambda, c.kind);
    // The geometric-mean kernel t^(l-1) (1-t)^(-l); weights sum to pi/sin(l pi).
    emit(rule_to_json(gauss_jacobi(c.nodes, -w.value(), w.value() - 1.0)), "-", out);
  }
  return kExitSuccess;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoConvergence:
    case ErrorKind::SingularMatrix:
    case ErrorKind::IllConditioned:
    case ErrorKind::EvaluationFailure:
      return kExitNoConvergence;
    default:
      return kExitInputError;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Means and entropies of accretive matrices, and checks of their inequalities", "sectorlab"};
  app.require_subcommand(1);

  MatrixCommand mean;
  auto* mean_cmd = app.add_subcommand("mean", "Weighted arithmetic, harmonic or geometric mean");
  mean_cmd->add_option("--kind", mean.kind, "arith|harm|geom|drury")
      ->required()
      ->check(CLI::IsMember({"arith", "harm", "geom", "drury"}));
  add_matrix_flags(mean_cmd, mean);

  MatrixCommand entropy;
  auto* entropy_cmd = app.add_subcommand("entropy", "Relative or Tsallis relative operator entropy");
  entropy_cmd->add_option("--kind", entropy.kind, "relative|tsallis")
      ->required()
      ->check(CLI::IsMember({"relative", "tsallis"}));
  add_matrix_flags(entropy_cmd, entropy);

  VerifyCommand verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check every inequality over a seeded ensemble");
  verify_cmd->add_option("--dim", verify.dim, "Matrix dimension")->capture_default_str();
  verify_cmd->add_option("--trials", verify.trials, "Random pairs per check")->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed, "Ensemble seed")->capture_default_str();
  verify_cmd->add_option("--angle", verify.angle, "Sector half-angle as a fraction of pi/2")->capture_default_str();
  verify_cmd->add_option("--lambdas", verify.lambdas, "Comma-separated weights")->delimiter(',');
  verify_cmd->add_option("--only", verify.only, "Comma-separated property ids")->delimiter(',');
  verify_cmd->add_option("--report", verify.report, "Report path, '-' for stdout")->capture_default_str();
  verify_cmd->add_option("--threads", verify.threads, "Worker threads for trials")->capture_default_str();

  RuleCommand rule;
  auto* rule_cmd = app.add_subcommand("rule", "Dump a quadrature rule on (0,1)");
  rule_cmd->add_option("--kind", rule.kind, "legendre|jacobi")
      ->required()
      ->check(CLI::IsMember({"legendre", "jacobi"}));
  rule_cmd->add_option("--lambda", rule.lambda, "Weight in (0,1), jacobi only");
  rule_cmd->add_option("--nodes", rule.nodes, "Node count")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (mean_cmd->parsed()) return cmd_mean(mean, out);
    if (entropy_cmd->parsed()) return cmd_entropy(entropy, out);
    if (verify_cmd->parsed()) return cmd_verify(verify, out, err);
    return cmd_rule(rule, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

}  // namespace sectorlab
