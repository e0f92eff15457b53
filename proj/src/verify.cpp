#include "sectorlab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

namespace sectorlab {

std::string_view to_string(ReportStatus status) noexcept {
  switch (status) {
    case ReportStatus::Ok: return "ok";
    case ReportStatus::Violations: return "violations";
    case ReportStatus::WitnessFound: return "witness_found";
    case ReportStatus::Warning: return "warning";
    case ReportStatus::Error: return "error";
  }
  return "unknown";
}

namespace {

constexpr std::string_view kSearchId = "search_agh_counterexample";

}  // namespace

bool PropertyReport::theorem_backed() const { return property_id != kSearchId; }

void EnsembleSpec::validate() const {
  SectorSpec{dim, sector_angle, cond_cap, seed}.validate();
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be >= 1");
  if (lambda_grid.empty()) throw Error(ErrorKind::InvalidArgument, "lambda grid is empty");
}

void Outcome::merge(const Outcome& other) {
  holds = holds && other.holds;
  margin = std::min(margin, other.margin);
}

TrialPair draw_pair_from_seed(const EnsembleSpec& spec, std::uint64_t trial_seed) {
  SectorSpec a{spec.dim, spec.sector_angle, spec.cond_cap, RandomStream::derive(trial_seed, 0, "a")};
  SectorSpec b = a;
  b.seed = RandomStream::derive(trial_seed, 0, "b");
  return {trial_seed, random_accretive(a), random_accretive(b)};
}

TrialPair draw_pair(const EnsembleSpec& spec, std::size_t index) {
  return draw_pair_from_seed(spec, RandomStream::derive(spec.seed, index, "trial"));
}

// Outcomes ----------------------------------------------------------------------

namespace {

// In units where holds <=> normalized margin >= -tol.relative; stays meaningful
// when both sides vanish.
double normalize(double margin, double scale, const LoewnerTolerance& tol) {
  const double unit = tol.relative > 0.0 ? tol.absolute / tol.relative + scale : scale;
  return unit > 0.0 ? margin / unit : margin;
}

}  // namespace

Outcome loewner_outcome(const HermitianMatrix& greater, const HermitianMatrix& lesser, const LoewnerTolerance& tol) {
  const LoewnerResult r = loewner_geq(greater, lesser, tol);
  const double scale = std::max(op_norm(greater), op_norm(lesser));
  return {r.holds, normalize(r.margin, scale, tol)};
}

Outcome scalar_outcome(double lhs, double rhs, const LoewnerTolerance& tol) {
  const double diff = rhs - lhs;
  const double scale = std::abs(rhs);
  return {diff >= -tol.bound(scale), normalize(diff, scale, tol)};
}

namespace {

AccretiveMatrix as_accretive(const HermitianMatrix& h) { return AccretiveMatrix(h.matrix()); }

double quadratic_form(const HermitianMatrix& h, std::span<const Complex> x) {
  return inner(h.matrix() * x, x).real();
}

// Re(A #_l B) and the inverses of the real parts, shared by the scalar checks.
struct RealPartInverses {
  HermitianMatrix mean_re_inv;
  HermitianMatrix a_re_inv;
  HermitianMatrix b_re_inv;
};

RealPartInverses real_part_inverses(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w,
                                    const VerifyOptions& opts) {
  const HermitianMatrix mean_re = real_part(geometric_mean(a, b, w, opts.mean));
  return {HermitianMatrix(inverse(mean_re.matrix())), HermitianMatrix(inverse(real_part(a.matrix()).matrix())),
          HermitianMatrix(inverse(real_part(b.matrix()).matrix()))};
}

double scalar_mean_or_zero(double x, double y, Weight w) {
  if (x <= 0.0 || y <= 0.0) return 0.0;
  return scalar_geometric(x, y, w);
}

Outcome deviation_outcome(const ComplexMatrix& value, const ComplexMatrix& reference, double threshold) {
  const double dev = relative_frobenius(value, reference);
  return {dev <= threshold, -dev};
}

}  // namespace

Outcome re_geometric_outcome(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w, const VerifyOptions& opts) {
  const HermitianMatrix lhs = real_part(geometric_mean(a, b, w, opts.mean));
  const HermitianMatrix rhs = geometric_mean_hpd(real_part(a.matrix()), real_part(b.matrix()), w);
  return loewner_outcome(lhs, rhs, opts.tolerance);
}

Outcome re_harmonic_outcome(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w, const VerifyOptions& opts) {
  const HermitianMatrix lhs = real_part(harmonic_mean(a, b, w));
  const HermitianMatrix rhs = real_part(harmonic_mean(as_accretive(real_part(a.matrix())),
                                                      as_accretive(real_part(b.matrix())), w));
  return loewner_outcome(lhs, rhs, opts.tolerance);
}

Outcome re_relative_entropy_outcome(const AccretiveMatrix& a, const AccretiveMatrix& b, const VerifyOptions& opts) {
  const HermitianMatrix lhs = real_part(relative_entropy(a, b, opts.entropy));
  const HermitianMatrix rhs = relative_entropy_hpd(real_part(a.matrix()), real_part(b.matrix()));
  return loewner_outcome(lhs, rhs, opts.tolerance);
}

Outcome re_tsallis_outcome(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w, const VerifyOptions& opts) {
  const HermitianMatrix lhs = real_part(tsallis_from_mean(a, b, w, opts.mean));
  const HermitianMatrix rhs = tsallis_entropy_hpd(real_part(a.matrix()), real_part(b.matrix()), w);
  return loewner_outcome(lhs, rhs, opts.tolerance);
}

Outcome vector_family_outcome(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w,
                              std::span<const ComplexVector> family, const VerifyOptions& opts) {
  const RealPartInverses inv = real_part_inverses(a, b, w, opts);
  double lhs = 0.0;
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (const auto& x : family) {
    lhs += quadratic_form(inv.mean_re_inv, x);
    sum_a += quadratic_form(inv.a_re_inv, x);
    sum_b += quadratic_form(inv.b_re_inv, x);
  }
  return scalar_outcome(lhs, scalar_mean_or_zero(sum_a, sum_b, w), opts.tolerance);
}

Outcome norm_inequality_outcome(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w,
                                const VerifyOptions& opts) {
  const RealPartInverses inv = real_part_inverses(a, b, w, opts);
  const double lhs = op_norm(inv.mean_re_inv);
  const double rhs = scalar_geometric(op_norm(inv.a_re_inv), op_norm(inv.b_re_inv), w);
  return scalar_outcome(lhs, rhs, opts.tolerance);
}

Outcome bilinear_outcome(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w, std::span<const Complex> y,
                         std::span<const Complex> x, const VerifyOptions& opts) {
  if (vector_norm(y) == 0.0) return {true, 0.0};
  const HermitianMatrix mean_re = real_part(geometric_mean(a, b, w, opts.mean));
  const HermitianMatrix a_re_inv(inverse(real_part(a.matrix()).matrix()));
  const HermitianMatrix b_re_inv(inverse(real_part(b.matrix()).matrix()));
  const double re_xy = inner(y, x).real();
  const double lhs = re_xy * re_xy;
  const double rhs = quadratic_form(mean_re, y) *
                     scalar_mean_or_zero(quadratic_form(a_re_inv, x), quadratic_form(b_re_inv, x), w);
  return scalar_outcome(lhs, rhs, opts.tolerance);
}

Outcome homogeneity_outcome(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w, double alpha, double beta,
                            const VerifyOptions& opts) {
  const AccretiveMatrix sa(alpha * a.matrix());
  const AccretiveMatrix sb(beta * b.matrix());
  const ComplexMatrix lhs = geometric_mean(sa, sb, w, opts.mean);
  const ComplexMatrix rhs = scalar_geometric(alpha, beta, w) * geometric_mean(a, b, w, opts.mean);
  return deviation_outcome(lhs, rhs, opts.homogeneity_tol);
}

Outcome symmetry_outcome(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w, const VerifyOptions& opts) {
  return deviation_outcome(geometric_mean(a, b, w, opts.mean), geometric_mean(b, a, w.complement(), opts.mean),
                           opts.symmetry_tol);
}

ChainOutcome agh_chain_outcome(const AccretiveMatrix& a, const AccretiveMatrix& b, Weight w,
                               const VerifyOptions& opts) {
  ComplexMatrix geo;
  try {
    geo = geometric_mean(a, b, w, opts.mean);
  } catch (const IntegrationNoConvergence&) {
    return {{true, 0.0}, {}, true};
  }
  const HermitianMatrix harm = real_part(harmonic_mean(a, b, w));
  const HermitianMatrix mid = real_part(geo);
  const HermitianMatrix arith = real_part(arithmetic_mean(a, b, w));

  const Outcome lower = loewner_outcome(mid, harm, opts.tolerance);
  const Outcome upper = loewner_outcome(arith, mid, opts.tolerance);
  ChainOutcome out{lower, {}, false};
  out.outcome.merge(upper);
  if (!lower.holds) out.broken_link = "harmonic<=geometric";
  if (!upper.holds) out.broken_link += out.broken_link.empty() ? "geometric<=arithmetic" : ",geometric<=arithmetic";
  return out;
}

// Ensemble runner ------------------------------------------------------------------

namespace {

struct TrialResult {
  Outcome outcome;
  std::string note;  // non-empty marks something worth reporting
  bool inconclusive = false;
};

using TrialEval = std::function<TrialResult(const TrialPair&)>;

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Evaluates every trial (in parallel when asked) and aggregates in trial order,
// so the report does not depend on scheduling.
std::vector<TrialResult> run_trials(const std::string& id, const EnsembleSpec& spec, const VerifyOptions& opts,
                                    const TrialEval& eval) {
  spec.validate();
  opts.tolerance.validate();
  const std::size_t n = spec.trials;
  std::vector<std::optional<TrialResult>> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::uint64_t> seeds(n);

  auto work = [&](std::size_t i) {
    try {
      const TrialPair pair = draw_pair(spec, i);
      seeds[i] = pair.seed;
      results[i] = eval(pair);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) work(i);
      });
    }
  }

  std::vector<TrialResult> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) {
      try {
        std::rethrow_exception(errors[i]);
      } catch (const Error& e) {
        throw Error(e.kind(), id + " trial " + std::to_string(i) + " (seed " + std::to_string(seeds[i]) +
                                  "): " + e.what());
      } catch (const std::exception& e) {
        throw Error(ErrorKind::InvalidArgument,
                    id + " trial " + std::to_string(i) + " (seed " + std::to_string(seeds[i]) + "): " + e.what());
      }
    }
    out.push_back(std::move(*results[i]));
  }
  return out;
}

PropertyReport aggregate(const std::string& id, const EnsembleSpec& spec, const std::vector<TrialResult>& results,
                         const LoewnerTolerance& reported) {
  PropertyReport r;
  r.property_id = id;
  r.trials = results.size();
  r.tolerance = reported;
  r.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const Outcome& o = results[i].outcome;
    if (!o.holds) ++r.violations;
    if (o.margin < r.worst_margin) {
      r.worst_margin = o.margin;
      r.worst_seed = RandomStream::derive(spec.seed, i, "trial");
    }
  }
  if (!std::isfinite(r.worst_margin)) r.worst_margin = 0.0;
  r.status = r.violations == 0 ? ReportStatus::Ok : ReportStatus::Violations;
  return r;
}

PropertyReport run_property(const std::string& id, const EnsembleSpec& spec, const VerifyOptions& opts,
                            const LoewnerTolerance& reported, const TrialEval& eval) {
  return aggregate(id, spec, run_trials(id, spec, opts, eval), reported);
}

// Runs `per_lambda` over the grid and merges.
TrialEval over_grid(const EnsembleSpec& spec, std::function<Outcome(const TrialPair&, Weight)> per_lambda) {
  return [grid = spec.lambda_grid, per_lambda = std::move(per_lambda)](const TrialPair& p) {
    TrialResult r;
    for (const Weight& w : grid) r.outcome.merge(per_lambda(p, w));
    return r;
  };
}

}  // namespace

PropertyReport check_re_geometric(const EnsembleSpec& spec, const VerifyOptions& opts) {
  return run_property("check_re_geometric", spec, opts, opts.tolerance,
                      over_grid(spec, [&](const TrialPair& p, Weight w) {
                        return re_geometric_outcome(p.a, p.b, w, opts);
                      }));
}

PropertyReport check_re_harmonic(const EnsembleSpec& spec, const VerifyOptions& opts) {
  return run_property("check_re_harmonic", spec, opts, opts.tolerance,
                      over_grid(spec, [&](const TrialPair& p, Weight w) {
                        return re_harmonic_outcome(p.a, p.b, w, opts);
                      }));
}

PropertyReport check_re_relative_entropy(const EnsembleSpec& spec, const VerifyOptions& opts) {
  return run_property("check_re_relative_entropy", spec, opts, opts.tolerance, [&](const TrialPair& p) {
    return TrialResult{re_relative_entropy_outcome(p.a, p.b, opts), {}, false};
  });
}

PropertyReport check_re_tsallis(const EnsembleSpec& spec, const VerifyOptions& opts) {
  return run_property("check_re_tsallis", spec, opts, opts.tolerance,
                      over_grid(spec, [&](const TrialPair& p, Weight w) {
                        return re_tsallis_outcome(p.a, p.b, w, opts);
                      }));
}

PropertyReport check_vector_family(const EnsembleSpec& spec, std::span<const std::size_t> family_sizes,
                                   const VerifyOptions& opts) {
  if (family_sizes.empty()) throw Error(ErrorKind::InvalidArgument, "no family sizes given");
  for (std::size_t k : family_sizes) {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "family_size must be >= 1");
  }
  const std::vector<std::size_t> sizes(family_sizes.begin(), family_sizes.end());
  return run_property("check_vector_family", spec, opts, opts.tolerance,
                      over_grid(spec, [&, sizes](const TrialPair& p, Weight w) {
                        Outcome o;
                        for (std::size_t k : sizes) {
                          const auto family =
                              random_unit_vectors(spec.dim, k, RandomStream::derive(p.seed, k, "family"));
                          o.merge(vector_family_outcome(p.a, p.b, w, family, opts));
                        }
                        return o;
                      }));
}

PropertyReport check_norm_inequality(const EnsembleSpec& spec, const VerifyOptions& opts) {
  return run_property("check_norm_inequality", spec, opts, opts.tolerance,
                      over_grid(spec, [&](const TrialPair& p, Weight w) {
                        return norm_inequality_outcome(p.a, p.b, w, opts);
                      }));
}

PropertyReport check_bilinear(const EnsembleSpec& spec, const VerifyOptions& opts) {
  const std::size_t pairs = std::max<std::size_t>(1, opts.bilinear_pairs);
  return run_property("check_bilinear", spec, opts, opts.tolerance,
                      over_grid(spec, [&, pairs](const TrialPair& p, Weight w) {
                        const auto xs = random_unit_vectors(spec.dim, pairs, RandomStream::derive(p.seed, 0, "x"));
                        const auto ys = random_unit_vectors(spec.dim, pairs, RandomStream::derive(p.seed, 0, "xstar"));
                        Outcome o;
                        for (std::size_t k = 0; k < pairs; ++k) {
                          o.merge(bilinear_outcome(p.a, p.b, w, ys[k], xs[k], opts));
                        }
                        return o;
                      }));
}

PropertyReport check_homogeneity(const EnsembleSpec& spec, std::span<const std::pair<double, double>> scales,
                                 const VerifyOptions& opts) {
  if (scales.empty()) throw Error(ErrorKind::InvalidArgument, "no scales given");
  for (const auto& [alpha, beta] : scales) {
    if (!(alpha > 0.0 && beta > 0.0)) throw Error(ErrorKind::InvalidScalar, "scales must be positive");
  }
  const std::vector<std::pair<double, double>> owned(scales.begin(), scales.end());
  return run_property("check_homogeneity", spec, opts, {0.0, opts.homogeneity_tol},
                      over_grid(spec, [&, owned](const TrialPair& p, Weight w) {
                        Outcome o;
                        for (const auto& [alpha, beta] : owned) {
                          o.merge(homogeneity_outcome(p.a, p.b, w, alpha, beta, opts));
                        }
                        return o;
                      }));
}

PropertyReport check_symmetry(const EnsembleSpec& spec, const VerifyOptions& opts) {
  return run_property("check_symmetry", spec, opts, {0.0, opts.symmetry_tol},
                      over_grid(spec, [&](const TrialPair& p, Weight w) {
                        return symmetry_outcome(p.a, p.b, w, opts);
                      }));
}

PropertyReport search_agh_counterexample(const EnsembleSpec& spec, const VerifyOptions& opts) {
  // lambda = 1/2 first, then the rest of the grid.
  std::vector<Weight> order{Weight(0.5)};
  for (const Weight& w : spec.lambda_grid) {
    if (w.value() != 0.5) order.push_back(w);
  }
  const std::string id(kSearchId);
  const auto results = run_trials(id, spec, opts, [&](const TrialPair& p) {
    TrialResult r;
    for (const Weight& w : order) {
      const ChainOutcome c = agh_chain_outcome(p.a, p.b, w, opts);
      if (c.inconclusive) {
        r.inconclusive = true;
        continue;
      }
      r.outcome.merge(c.outcome);
      if (!c.outcome.holds && r.note.empty()) {
        r.note = "lambda=" + format_double(w.value()) + " link " + c.broken_link;
      }
    }
    return r;
  });

  PropertyReport report = aggregate(id, spec, results, opts.tolerance);
  std::size_t inconclusive = 0;
  for (const auto& r : results) inconclusive += r.inconclusive ? 1 : 0;
  std::ostringstream detail;
  const auto witness = std::find_if(results.begin(), results.end(), [](const TrialResult& r) { return !r.outcome.holds; });
  if (witness != results.end()) {
    const std::size_t index = static_cast<std::size_t>(witness - results.begin());
    const std::uint64_t seed = RandomStream::derive(spec.seed, index, "trial");
    report.status = ReportStatus::WitnessFound;
    detail << "first witness: trial " << index << " seed " << seed << " " << witness->note;
  } else {
    report.status = ReportStatus::Warning;
    detail << "WARNING: no chain violation found in " << spec.trials << " trials";
  }
  if (inconclusive > 0) detail << "; " << inconclusive << " trials with unconverged quadrature skipped";
  report.detail = detail.str();
  return report;
}

const std::vector<std::string>& property_ids() {
  static const std::vector<std::string> ids{
      "check_re_geometric", "check_re_harmonic",     "check_re_relative_entropy", "check_re_tsallis",
      "check_vector_family", "check_norm_inequality", "check_bilinear",            "check_homogeneity",
      "check_symmetry",     std::string(kSearchId)};
  return ids;
}

namespace {

PropertyReport run_one(const std::string& id, const EnsembleSpec& spec, const VerifyOptions& opts) {
  if (id == "check_re_geometric") return check_re_geometric(spec, opts);
  if (id == "check_re_harmonic") return check_re_harmonic(spec, opts);
  if (id == "check_re_relative_entropy") return check_re_relative_entropy(spec, opts);
  if (id == "check_re_tsallis") return check_re_tsallis(spec, opts);
  if (id == "check_vector_family") return check_vector_family(spec, opts.family_sizes, opts);
  if (id == "check_norm_inequality") return check_norm_inequality(spec, opts);
  if (id == "check_bilinear") return check_bilinear(spec, opts);
  if (id == "check_homogeneity") return check_homogeneity(spec, opts.scales, opts);
  if (id == "check_symmetry") return check_symmetry(spec, opts);
  if (id == kSearchId) return search_agh_counterexample(spec, opts);
  throw Error(ErrorKind::InvalidArgument, "unknown property id '" + id + "'");
}

}  // namespace

std::vector<PropertyReport> run_selected(const EnsembleSpec& spec, std::span<const std::string> ids,
                                         const VerifyOptions& opts) {
  spec.validate();
  const auto& known = property_ids();
  for (const auto& id : ids) {
    if (std::find(known.begin(), known.end(), id) == known.end()) {
      throw Error(ErrorKind::InvalidArgument, "unknown property id '" + id + "'");
    }
  }
  std::vector<PropertyReport> out;
  for (const auto& id : known) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), id) == ids.end()) continue;
    try {
      out.push_back(run_one(id, spec, opts));
    } catch (const Error& e) {
      PropertyReport r;
      r.property_id = id;
      r.trials = spec.trials;
      r.tolerance = opts.tolerance;
      r.status = ReportStatus::Error;
      r.error_kind = e.kind();
      r.detail = e.what();
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<PropertyReport> run_all(const EnsembleSpec& spec, const VerifyOptions& opts) {
  return run_selected(spec, {}, opts);
}

}  // namespace sectorlab
