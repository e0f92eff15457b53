#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sectorlab/entropy.hpp"
#include "sectorlab/ensemble.hpp"
#include "sectorlab/means.hpp"

namespace sectorlab {

/// Seeded recipe for the random accretive pairs a property is checked on.
struct EnsembleSpec {
  std::size_t dim = 3;
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  double sector_angle = 0.4 * 1.5707963267948966;  // radians, [0, pi/2)
  std::vector<Weight> lambda_grid{Weight(0.1), Weight(0.5), Weight(0.9)};
  double cond_cap = 10.0;

  void validate() const;
};

enum class ReportStatus { Ok, Violations, WitnessFound, Warning, Error };
std::string_view to_string(ReportStatus status) noexcept;

struct PropertyReport {
  std::string property_id;
  std::size_t trials = 0;
  std::size_t violations = 0;
  double worst_margin = 0.0;  // most negative normalized margin seen
  std::uint64_t worst_seed = 0;
  LoewnerTolerance tolerance;
  ReportStatus status = ReportStatus::Ok;
  std::string detail;
  /// Set when status is Error.
  ErrorKind error_kind = ErrorKind::InvalidArgument;

  bool theorem_backed() const;
};

struct VerifyOptions {
  LoewnerTolerance tolerance{};
  GeometricMeanConfig mean = adaptive_mean();
  EntropyConfig entropy{};
  double homogeneity_tol = 1e-9;
  double symmetry_tol = 1e-10;
  std::vector<std::size_t> family_sizes{1, 3, 8};
  std::size_t bilinear_pairs = 8;
  std::vector<std::pair<double, double>> scales{{1.0, 1.0}, {4.0, 9.0}, {0.5, 7.3}};
  unsigned threads = 1;

  static GeometricMeanConfig adaptive_mean() {
    GeometricMeanConfig cfg;
    cfg.adaptive = true;
    return cfg;
  }
};

/// Normalized outcome of one comparison: margin is the smallest eigenvalue of
/// (greater - lesser), or rhs - lhs for scalars, divided by
/// tol.absolute/tol.relative + scale, where scale is the larger operator norm
/// (|rhs| for scalars). The comparison holds iff margin >= -tol.relative.
struct Outcome {
  bool holds = true;
  double margin = std::numeric_limits<double>::infinity();  // identity for merge

  void merge(const Outcome& other);
};

struct TrialPair {
  std::uint64_t seed = 0;
  AccretiveMatrix a;
  AccretiveMatrix b;
};

/// Pair for trial `index`; a pure function of (spec, index).
TrialPair draw_pair(const EnsembleSpec& spec, std::size_t index);
/// Pair for an explicit trial seed (as recorded in worst_seed).
TrialPair draw_pair_from_seed(const EnsembleSpec& spec, std::uint64_t trial_seed);

Outcome loewner_outcome(const HermitianMatrix& greater, const HermitianMatrix& lesser, const LoewnerTolerance& tol);
Outcome scalar_outcome(double lhs, double rhs, const LoewnerTolerance& tol);

// Per-pair checks. Each returns whether the stated inequality holds.

/// Re(A #_l B) >= (Re A) #_l (Re B)
Outcome re_geometric_outcome(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w, const VerifyOptions& opts);
/// Re(A !_l B) >= (Re A) !_l (Re B)
Outcome re_harmonic_outcome(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w, const VerifyOptions& opts);
/// Re S(A|B) >= S(Re A | Re B)
Outcome re_relative_entropy_outcome(const AccretiveMatrix& a, const AccretiveMatrix& b, const VerifyOptions& opts);
/// Re T_l(A|B) >= T_l(Re A | Re B)
Outcome re_tsallis_outcome(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w, const VerifyOptions& opts);
/// sum <(Re(A #_l B))^-1 x,x> <= (sum <(Re A)^-1 x,x>) #_l (sum <(Re B)^-1 x,x>)
Outcome vector_family_outcome(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w,
                              std::span<const ComplexVector> family, const VerifyOptions& opts);
/// ||(Re(A #_l B))^-1|| <= ||(Re A)^-1||^(1-l) ||(Re B)^-1||^l
Outcome norm_inequality_outcome(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w,
                                const VerifyOptions& opts);
/// (Re <y,x>)^2 <= <Re(A #_l B) y,y> (<(Re A)^-1 x,x> #_l <(Re B)^-1 x,x>)
Outcome bilinear_outcome(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w, std::span<const Complex> y,
                         std::span<const Complex> x, const VerifyOptions& opts);
/// (alpha A) #_l (beta B) = alpha^(1-l) beta^l (A #_l B)
Outcome homogeneity_outcome(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w, double alpha, double beta,
                            const VerifyOptions& opts);
/// A #_l B = B #_(1-l) A
Outcome symmetry_outcome(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w, const VerifyOptions& opts);

/// Re(A !_l B) <= Re(A #_l B) <= Re(A nabla_l B); broken_link names the failing link.
struct ChainOutcome {
  Outcome outcome;
  std::string broken_link;
  bool inconclusive = false;  // quadrature did not converge
};
ChainOutcome agh_chain_outcome(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w,
                               const VerifyOptions& opts);

// Ensemble checks.

PropertyReport check_re_geometric(const EnsembleSpec& spec, const VerifyOptions& opts = {});
PropertyReport check_re_harmonic(const EnsembleSpec& spec, const VerifyOptions& opts = {});
PropertyReport check_re_relative_entropy(const EnsembleSpec& spec, const VerifyOptions& opts = {});
PropertyReport check_re_tsallis(const EnsembleSpec& spec, const VerifyOptions& opts = {});
PropertyReport check_vector_family(const EnsembleSpec& spec, std::span<const std::size_t> family_sizes,
                                   const VerifyOptions& opts = {});
PropertyReport check_norm_inequality(const EnsembleSpec& spec, const VerifyOptions& opts = {});
PropertyReport check_bilinear(const EnsembleSpec& spec, const VerifyOptions& opts = {});
PropertyReport check_homogeneity(const EnsembleSpec& spec, std::span<const std::pair<double, double>> scales,
                                 const VerifyOptions& opts = {});
PropertyReport check_symmetry(const EnsembleSpec& spec, const VerifyOptions& opts = {});
/// Random search for pairs breaking the harmonic <= geometric <= arithmetic
/// chain of real parts. Finding one is the expected outcome for wide sectors.
PropertyReport search_agh_counterexample(const EnsembleSpec& spec, const VerifyOptions& opts = {});

/// Every property id, in run order.
const std::vector<std::string>& property_ids();

/// Runs the named checks (all when ids is empty). Failures of one check are
/// recorded in its report and do not stop the others.
std::vector<PropertyReport> run_selected(const EnsembleSpec& spec, std::span<const std::string> ids,
                                         const VerifyOptions& opts = {});
std::vector<PropertyReport> run_all(const EnsembleSpec& spec, const VerifyOptions& opts = {});

}  // namespace sectorlab
