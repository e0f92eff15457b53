#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>

#include "sectorlab/io.hpp"
#include "sectorlab/verify.hpp"
#include "support.hpp"

using namespace sectorlab;

namespace {

constexpr double kPi = std::numbers::pi;

EnsembleSpec spec_with(std::size_t dim, std::size_t trials, double angle_fraction, std::uint64_t seed = 0) {
  EnsembleSpec s;
  s.dim = dim;
  s.trials = trials;
  s.seed = seed;
  s.sector_angle = angle_fraction * kPi / 2.0;
  return s;
}

AccretiveMatrix identity(std::size_t n) { return AccretiveMatrix(ComplexMatrix::identity(n)); }

ComplexVector e1(std::size_t n) {
  ComplexVector v(n);
  v[0] = 1.0;
  return v;
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) e(i, j) = m(i, j);
  return e;
}

// Smallest eigenvalue of the Hermitian part of x, via Eigen.
double re_min_eig(const Eigen::MatrixXcd& x) {
  const Eigen::MatrixXcd h = (x + x.adjoint()) / 2.0;
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

const std::vector<std::string> kTheoremIds{
    "check_re_geometric",    "check_re_harmonic", "check_re_relative_entropy", "check_re_tsallis", "check_vector_family",
    "check_norm_inequality", "check_bilinear",    "check_homogeneity",         "check_symmetry"};

// First chain-breaking trial of the default search at angle 0.49 pi/2, dim 2.
constexpr std::size_t kWitnessTrial = 0;
constexpr std::uint64_t kWitnessSeed = 15027092920476149158ULL;

}  // namespace

TEST(Outcomes, LoewnerAndScalarMargins) {
  const Outcome a = loewner_outcome(HermitianMatrix::diagonal({2.0, 2.0}), HermitianMatrix::identity(2), {});
  EXPECT_TRUE(a.holds);
  EXPECT_DOUBLE_EQ(a.margin, 1.0 / 3.0);
  const Outcome b = scalar_outcome(2.0, 1.0, {});
  EXPECT_FALSE(b.holds);
  EXPECT_DOUBLE_EQ(b.margin, -0.5);
  Outcome merged;
  merged.merge(a);
  merged.merge(b);
  EXPECT_FALSE(merged.holds);
  EXPECT_DOUBLE_EQ(merged.margin, -0.5);
}

TEST(Outcomes, EqualArgumentsGiveZeroMargin) {
  const TrialPair p = draw_pair(spec_with(3, 1, 0.4), 0);
  const VerifyOptions opts;
  const Weight w(0.3);
  EXPECT_NEAR(re_geometric_outcome(p.a, p.a, w, opts).margin, 0.0, 1e-10);
  EXPECT_NEAR(re_harmonic_outcome(p.a, p.a, w, opts).margin, 0.0, 1e-10);
  EXPECT_NEAR(re_relative_entropy_outcome(p.a, p.a, opts).margin, 0.0, 1e-10);
  EXPECT_NEAR(re_tsallis_outcome(p.a, p.a, w, opts).margin, 0.0, 1e-10);
  EXPECT_TRUE(re_geometric_outcome(p.a, p.a, w, opts).holds);
}

TEST(Outcomes, VectorFamilyExamples) {
  const VerifyOptions opts;
  const std::vector<ComplexVector> single{e1(2)};
  const Outcome o = vector_family_outcome(identity(2), identity(2), Weight(0.5), single, opts);
  EXPECT_TRUE(o.holds);
  EXPECT_NEAR(o.margin, 0.0, 1e-15);
  const std::vector<ComplexVector> zeros(3, ComplexVector(2));
  const TrialPair p = draw_pair(spec_with(2, 1, 0.4), 0);
  const Outcome z = vector_family_outcome(p.a, p.b, Weight(0.5), zeros, opts);
  EXPECT_TRUE(z.holds);
  EXPECT_EQ(z.margin, 0.0);
}

TEST(Outcomes, ArithmeticBoundAtUnitParameter) {
  // sum <(Re(A#B))^-1 x,x> <= (1-l) sum <(Re A)^-1 x,x> + l sum <(Re B)^-1 x,x>
  for (std::size_t i = 0; i < 50; ++i) {
    const TrialPair p = draw_pair(spec_with(3, 1, 0.45, 5), i);
    const auto family = random_unit_vectors(3, 4, i);
    for (double l : {0.1, 0.5, 0.9}) {
      const Weight w(l);
      const HermitianMatrix mean_inv(inverse(real_part(geometric_mean(p.a, p.b, w)).matrix()));
      const HermitianMatrix a_inv(inverse(real_part(p.a.matrix()).matrix()));
      const HermitianMatrix b_inv(inverse(real_part(p.b.matrix()).matrix()));
      double lhs = 0.0;
      double ra = 0.0;
      double rb = 0.0;
      for (const auto& x : family) {
        lhs += inner(mean_inv.matrix() * x, x).real();
        ra += inner(a_inv.matrix() * x, x).real();
        rb += inner(b_inv.matrix() * x, x).real();
      }
      EXPECT_LE(lhs, (1.0 - l) * ra + l * rb + 1e-10);
    }
  }
}

TEST(Outcomes, NormInequalityExamples) {
  const VerifyOptions opts;
  const Outcome id = norm_inequality_outcome(identity(2), identity(2), Weight(0.5), opts);
  EXPECT_TRUE(id.holds);
  EXPECT_NEAR(id.margin, 0.0, 1e-12);
  const Outcome scaled = norm_inequality_outcome(AccretiveMatrix(ComplexMatrix::diagonal({2.0, 2.0})),
                                                 AccretiveMatrix(ComplexMatrix::diagonal({8.0, 8.0})), Weight(0.5),
                                                 opts);
  EXPECT_TRUE(scaled.holds);
  EXPECT_NEAR(scaled.margin, 0.0, 1e-12);
}

TEST(Outcomes, BilinearExamples) {
  const VerifyOptions opts;
  const TrialPair p = draw_pair(spec_with(2, 1, 0.4), 0);
  const ComplexVector x{1.0, 0.0};
  const ComplexVector y{0.0, 1.0};
  const Outcome perp = bilinear_outcome(p.a, p.b, Weight(0.5), y, x, opts);
  EXPECT_TRUE(perp.holds);
  EXPECT_GT(perp.margin, 0.0);

  const Outcome eq = bilinear_outcome(identity(2), identity(2), Weight(0.5), e1(2), e1(2), opts);
  EXPECT_TRUE(eq.holds);
  EXPECT_NEAR(eq.margin, 0.0, 1e-12);

  const Outcome zero = bilinear_outcome(p.a, p.b, Weight(0.5), ComplexVector(2), x, opts);
  EXPECT_TRUE(zero.holds);
  EXPECT_EQ(zero.margin, 0.0);
}

TEST(Outcomes, HomogeneityAndSymmetryExamples) {
  const VerifyOptions opts;
  const TrialPair p = draw_pair(spec_with(3, 1, 0.4), 0);
  EXPECT_EQ(homogeneity_outcome(p.a, p.b, Weight(0.3), 1.0, 1.0, opts).margin, 0.0);
  const Outcome six = homogeneity_outcome(p.a, p.b, Weight(0.5), 4.0, 9.0, opts);
  EXPECT_TRUE(six.holds);
  EXPECT_GE(six.margin, -1e-9);
  EXPECT_TRUE(symmetry_outcome(p.a, p.a, Weight(0.3), opts).holds);
  EXPECT_TRUE(symmetry_outcome(p.a, p.b, Weight(0.5), opts).holds);
}

TEST(Checks, HpdEnsembleHoldsWithEquality) {
  const EnsembleSpec spec = spec_with(3, 30, 0.0);
  for (const PropertyReport& r : {check_re_geometric(spec), check_re_harmonic(spec), check_re_relative_entropy(spec),
                                  check_re_tsallis(spec)}) {
    EXPECT_EQ(r.violations, 0u) << r.property_id;
    EXPECT_EQ(r.status, ReportStatus::Ok);
    EXPECT_NEAR(r.worst_margin, 0.0, 1e-9) << r.property_id;
  }
}

TEST(Checks, SectorEnsembleHasNoViolations) {
  const EnsembleSpec spec = spec_with(3, 60, 0.4, 11);
  for (const PropertyReport& r : run_selected(spec, kTheoremIds)) {
    EXPECT_EQ(r.status, ReportStatus::Ok) << r.property_id << " " << r.detail;
    EXPECT_EQ(r.violations, 0u) << r.property_id;
    EXPECT_GE(r.worst_margin, -1e-9) << r.property_id;
    EXPECT_LE(r.violations, r.trials);
  }
}

TEST(Checks, ReportedTolerances) {
  const EnsembleSpec spec = spec_with(2, 2, 0.4);
  EXPECT_EQ(check_homogeneity(spec, VerifyOptions{}.scales).tolerance.relative, 1e-9);
  EXPECT_EQ(check_symmetry(spec).tolerance.relative, 1e-10);
  EXPECT_EQ(check_re_geometric(spec).tolerance.absolute, 1e-10);
}

TEST(Checks, ArgumentValidation) {
  const EnsembleSpec spec = spec_with(2, 2, 0.4);
  const std::size_t bad_sizes[] = {0};
  EXPECT_THROW(check_vector_family(spec, bad_sizes), Error);
  EXPECT_THROW(check_vector_family(spec, {}), Error);
  const std::pair<double, double> bad_scales[] = {{-1.0, 2.0}};
  EXPECT_THROW(check_homogeneity(spec, bad_scales), Error);
  EnsembleSpec bad = spec;
  bad.sector_angle = kPi / 2.0;
  EXPECT_THROW(check_symmetry(bad), Error);
  bad = spec;
  bad.trials = 0;
  EXPECT_THROW(check_symmetry(bad), Error);
  bad = spec;
  bad.lambda_grid.clear();
  EXPECT_THROW(check_symmetry(bad), Error);
}

TEST(Search, HpdEnsembleHasNoViolations) {
  const PropertyReport r = search_agh_counterexample(spec_with(2, 200, 0.0));
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.status, ReportStatus::Warning);
  EXPECT_NE(r.detail.find("WARNING"), std::string::npos);
  EXPECT_FALSE(r.theorem_backed());
}

TEST(Search, WideSectorFindsFrozenWitness) {
  EnsembleSpec spec = spec_with(2, 2000, 0.49);
  spec.lambda_grid = {Weight(0.5)};
  const PropertyReport r = search_agh_counterexample(spec);
  EXPECT_EQ(r.status, ReportStatus::WitnessFound);
  EXPECT_GE(r.violations, 1u);
  EXPECT_NE(r.detail.find("trial " + std::to_string(kWitnessTrial) + " seed " + std::to_string(kWitnessSeed)),
            std::string::npos)
      << r.detail;
}

TEST(Search, WitnessSeedReproducesViolation) {
  EnsembleSpec spec = spec_with(2, 1, 0.49);
  const TrialPair p = draw_pair_from_seed(spec, kWitnessSeed);
  EXPECT_EQ(draw_pair(spec, kWitnessTrial).a.matrix(), p.a.matrix());
  const ChainOutcome c = agh_chain_outcome(p.a, p.b, Weight(0.5), VerifyOptions{});
  EXPECT_FALSE(c.inconclusive);
  EXPECT_FALSE(c.outcome.holds);
  EXPECT_FALSE(c.broken_link.empty());

  // Independent confirmation with principal matrix powers: some link of the
  // chain has a real part that is not positive semidefinite.
  const Eigen::MatrixXcd a = to_eigen(p.a.matrix());
  const Eigen::MatrixXcd b = to_eigen(p.b.matrix());
  const Eigen::MatrixXcd root = a.sqrt();
  const Eigen::MatrixXcd root_inv = root.inverse();
  const Eigen::MatrixXcd geo = root * (root_inv * b * root_inv).sqrt() * root;
  const Eigen::MatrixXcd harm = (0.5 * a.inverse() + 0.5 * b.inverse()).inverse();
  const Eigen::MatrixXcd arith = 0.5 * a + 0.5 * b;
  EXPECT_LT(std::min(re_min_eig(geo - harm), re_min_eig(arith - geo)), -1e-6);
}

TEST(RunAll, TenReportsInOrder) {
  const auto reports = run_all(spec_with(2, 1, 0.4));
  ASSERT_EQ(reports.size(), 10u);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    EXPECT_EQ(reports[i].property_id, property_ids()[i]);
    EXPECT_EQ(reports[i].trials, 1u);
  }
}

TEST(RunAll, DeterministicAcrossRunsAndThreads) {
  const EnsembleSpec spec = spec_with(2, 40, 0.45, 99);
  VerifyOptions one;
  VerifyOptions four;
  four.threads = 4;
  const std::string first = dump_json(verify_document(spec, run_all(spec, one)));
  const std::string again = dump_json(verify_document(spec, run_all(spec, one)));
  const std::string threaded = dump_json(verify_document(spec, run_all(spec, four)));
  EXPECT_EQ(first, again);
  EXPECT_EQ(first, threaded);
}

TEST(RunSelected, UnknownIdThrows) {
  const std::string ids[] = {"check_everything"};
  EXPECT_THROW(run_selected(spec_with(2, 1, 0.4), ids), Error);
}

TEST(RunSelected, ErrorsAreRecordedPerCheck) {
  VerifyOptions opts;
  opts.mean.max_nodes = 16;
  opts.mean.tol = 1e-300;
  const auto reports = run_all(spec_with(2, 3, 0.4), opts);
  ASSERT_EQ(reports.size(), 10u);
  const auto find = [&](const std::string& id) {
    return *std::find_if(reports.begin(), reports.end(), [&](const PropertyReport& r) { return r.property_id == id; });
  };
  const PropertyReport geo = find("check_re_geometric");
  EXPECT_EQ(geo.status, ReportStatus::Error);
  EXPECT_EQ(geo.error_kind, ErrorKind::NoConvergence);
  EXPECT_NE(geo.detail.find("trial 0"), std::string::npos);
  EXPECT_EQ(find("check_re_harmonic").status, ReportStatus::Ok);
  EXPECT_EQ(find("check_re_relative_entropy").status, ReportStatus::Ok);
}
