#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "sectorlab/linalg.hpp"
#include "support.hpp"

using namespace sectorlab;
using sectorlab::support::I;
using sectorlab::support::matrix_near;
using sectorlab::support::matrix_rel_near;

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) e(i, j) = m(i, j);
  return e;
}

ComplexMatrix unitarity_defect(const ComplexMatrix& v) {
  return v.adjoint() * v - ComplexMatrix::identity(v.dim());
}

}  // namespace

TEST(ComplexMatrix, RejectsNonFiniteEntries) {
  EXPECT_THROW(ComplexMatrix(1, {Complex(std::nan(""), 0.0)}), Error);
  EXPECT_THROW(ComplexMatrix(1, {Complex(0.0, INFINITY)}), Error);
  EXPECT_THROW(ComplexMatrix(2, {1.0, 2.0, 3.0}), Error);
}

TEST(ComplexMatrix, ArithmeticDimensionMismatch) {
  try {
    (void)(ComplexMatrix::identity(2) + ComplexMatrix::identity(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(RealPart, Examples) {
  EXPECT_EQ(real_part(support::pair_a()).matrix(), ComplexMatrix::diagonal({2.0, 2.0}));
  const HermitianMatrix h(ComplexMatrix{{3.0, 1.0 + I}, {1.0 - I, 5.0}});
  EXPECT_EQ(real_part(h.matrix()), h);
  EXPECT_EQ(real_part(support::pair_b()).matrix(), ComplexMatrix::identity(2));
}

TEST(ImagPart, Examples) {
  EXPECT_EQ(imag_part(support::pair_a()).matrix(), (ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}));
  const HermitianMatrix h(ComplexMatrix{{3.0, 1.0 + I}, {1.0 - I, 5.0}});
  EXPECT_EQ(imag_part(h.matrix()).matrix(), ComplexMatrix(2));
  EXPECT_EQ(imag_part(support::pair_b()).matrix(), (ComplexMatrix{{0.0, -I}, {I, 0.0}}));
}

TEST(CartesianDecomposition, ReconstructsAndIsExactlyHermitian) {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 8; ++n) {
    const ComplexMatrix a = support::gaussian_matrix(n, rng);
    const HermitianMatrix re = real_part(a);
    const HermitianMatrix im = imag_part(a);
    EXPECT_EQ(re.matrix(), re.matrix().adjoint());
    EXPECT_EQ(im.matrix(), im.matrix().adjoint());
    const ComplexMatrix back = re.matrix() + I * im.matrix();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_LE(std::abs(back(i, j) - a(i, j)), 1e-15);
  }
}

TEST(Inverse, Examples) {
  EXPECT_EQ(inverse(ComplexMatrix::identity(3)), ComplexMatrix::identity(3));
  EXPECT_TRUE(matrix_near(inverse(ComplexMatrix::diagonal({2.0, 4.0})), ComplexMatrix::diagonal({0.5, 0.25}), 1e-16));
  const ComplexMatrix want = 0.2 * ComplexMatrix{{2.0, -I}, {-I, 2.0}};
  EXPECT_TRUE(matrix_near(inverse(support::pair_a()), want, 1e-15));
}

TEST(Inverse, ResidualAndInvolution) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + k % 8;
    const ComplexMatrix a = support::random_pd(n, rng).matrix() + I * support::random_hermitian(n, rng).matrix();
    const ComplexMatrix x = inverse(a);
    const double residual = frobenius_norm(a * x - ComplexMatrix::identity(n));
    EXPECT_LE(residual, 1e-10 * frobenius_norm(a) * static_cast<double>(n));
    EXPECT_TRUE(matrix_rel_near(inverse(x), a, 1e-8));
  }
}

TEST(Inverse, SingularAndIllConditioned) {
  try {
    inverse(ComplexMatrix{{1.0, 2.0}, {2.0, 4.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularMatrix);
  }
  try {
    inverse(ComplexMatrix::diagonal({1.0, 1e-16}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IllConditioned);
  }
  EXPECT_NO_THROW(inverse(ComplexMatrix::diagonal({1.0, 1e-16}), 1e20));
}

TEST(HermEig, Examples) {
  EXPECT_EQ(herm_eig(HermitianMatrix::diagonal({3.0, 1.0})).values, (std::vector<double>{1.0, 3.0}));
  const HermEig swap = herm_eig(HermitianMatrix(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}));
  EXPECT_NEAR(swap.values[0], -1.0, 1e-15);
  EXPECT_NEAR(swap.values[1], 1.0, 1e-15);
  const HermEig deg = herm_eig(HermitianMatrix::diagonal({2.0, 2.0}));
  EXPECT_EQ(deg.values, (std::vector<double>{2.0, 2.0}));
  EXPECT_LE(frobenius_norm(unitarity_defect(deg.vectors)), 1e-15);
}

TEST(HermEig, AgreesWithEigenOn1000RandomMatrices) {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + k % 8;
    const HermitianMatrix h = support::random_hermitian(n, rng);
    const HermEig e = herm_eig(h);
    const double scale = frobenius_norm(h.matrix()) * static_cast<double>(n);

    ComplexMatrix vd = e.vectors;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) vd(i, j) *= e.values[j];
    EXPECT_LE(frobenius_norm(h.matrix() * e.vectors - vd), 1e-12 * scale);
    EXPECT_LE(frobenius_norm(unitarity_defect(e.vectors)), 1e-12 * static_cast<double>(n));
    EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(to_eigen(h.matrix()), Eigen::EigenvaluesOnly);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(e.values[i], oracle.eigenvalues()(static_cast<Eigen::Index>(i)), 1e-12 * scale);
    }
  }
}

TEST(HermEig, SweepCapRaisesNoConvergence) {
  std::mt19937_64 rng(5);
  try {
    herm_eig(support::random_hermitian(6, rng), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoConvergence);
  }
}

TEST(HpdPower, Examples) {
  EXPECT_TRUE(matrix_near(hpd_power(HermitianMatrix::diagonal({4.0, 9.0}), 0.5).matrix(),
                          ComplexMatrix::diagonal({2.0, 3.0}), 1e-15));
  std::mt19937_64 rng(8);
  const HermitianMatrix h = support::random_pd(4, rng);
  EXPECT_TRUE(matrix_rel_near(hpd_power(h, 1.0).matrix(), h.matrix(), 1e-12));
  EXPECT_NEAR(hpd_power(HermitianMatrix::diagonal({8.0}), 1.0 / 3.0)(0, 0).real(), 2.0, 1e-15);
}

TEST(HpdPower, RejectsNonPositive) {
  try {
    hpd_power(HermitianMatrix::diagonal({1.0, 0.0}), 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPositiveDefinite);
  }
  EXPECT_THROW(hpd_log(HermitianMatrix::diagonal({-1.0, 2.0})), Error);
}

TEST(HpdLog, Examples) {
  const double e = std::numbers::e;
  EXPECT_TRUE(matrix_near(hpd_log(HermitianMatrix::diagonal({1.0, e})).matrix(), ComplexMatrix::diagonal({0.0, 1.0}),
                          1e-15));
  EXPECT_EQ(hpd_log(HermitianMatrix::identity(3)).matrix(), ComplexMatrix(3));
  EXPECT_TRUE(matrix_near(hpd_log(HermitianMatrix::diagonal({e * e, e * e * e})).matrix(),
                          ComplexMatrix::diagonal({2.0, 3.0}), 1e-15));
}

TEST(HpdFunctions, PowerAndLogLaws) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + k % 6;
    const HermitianMatrix h = support::random_pd(n, rng);
    const double p = 0.3 + 0.01 * k;
    const double q = 1.1 - 0.005 * k;
    EXPECT_TRUE(matrix_rel_near(hpd_power(h, p).matrix() * hpd_power(h, q).matrix(), hpd_power(h, p + q).matrix(),
                                1e-10));
    const ComplexMatrix log_p = hpd_log(hpd_power(h, p)).matrix();
    const ComplexMatrix want = p * hpd_log(h).matrix();
    EXPECT_LE(frobenius_norm(log_p - want), 1e-10 * std::max(1.0, frobenius_norm(want)));
  }
}

TEST(LoewnerGeq, Examples) {
  const LoewnerTolerance exact{0.0, 0.0};
  const LoewnerResult a = loewner_geq(HermitianMatrix::diagonal({2.0, 2.0}), HermitianMatrix::identity(2), exact);
  EXPECT_TRUE(a.holds);
  EXPECT_DOUBLE_EQ(a.margin, 1.0);
  const LoewnerResult b = loewner_geq(HermitianMatrix::diagonal({2.0, 0.5}), HermitianMatrix::identity(2), exact);
  EXPECT_FALSE(b.holds);
  EXPECT_DOUBLE_EQ(b.margin, -0.5);
  std::mt19937_64 rng(1);
  const HermitianMatrix x = support::random_hermitian(3, rng);
  const LoewnerResult c = loewner_geq(x, x, exact);
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.margin, 0.0);
}

TEST(LoewnerGeq, ToleranceAndDimension) {
  const HermitianMatrix y = HermitianMatrix::identity(2);
  const HermitianMatrix x = HermitianMatrix::diagonal({1.0, 1.0 - 5e-11});
  EXPECT_TRUE(loewner_geq(x, y).holds);
  EXPECT_FALSE(loewner_geq(x, y, {0.0, 0.0}).holds);
  EXPECT_THROW(loewner_geq(x, HermitianMatrix::identity(3)), Error);
  EXPECT_THROW((LoewnerTolerance{-1.0, 0.0}.validate()), Error);
}

TEST(LoewnerGeq, MutualOrderImpliesEquality) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 1 + k % 5;
    const HermitianMatrix x = support::random_hermitian(n, rng);
    const HermitianMatrix y(x.matrix() + 1e-15 * support::random_hermitian(n, rng).matrix());
    const LoewnerTolerance exact{0.0, 0.0};
    if (loewner_geq(x, y, exact).holds && loewner_geq(y, x, exact).holds) {
      EXPECT_LE(op_norm(x.matrix() - y.matrix()),
                static_cast<double>(n) * 1e-12 * std::max(op_norm(x), op_norm(y)));
    }
  }
}

TEST(OpNorm, Examples) {
  EXPECT_NEAR(op_norm(ComplexMatrix::diagonal({2.0, 3.0})), 3.0, 1e-15);
  EXPECT_NEAR(op_norm(ComplexMatrix::identity(4)), 1.0, 1e-15);
  EXPECT_NEAR(op_norm(ComplexMatrix{{0.0, 2.0}, {0.0, 0.0}}), 2.0, 1e-15);
}

TEST(OpNorm, PsdNormIsLargestEigenvalue) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 50; ++k) {
    const HermitianMatrix h = support::random_pd(1 + k % 6, rng, 0.0);
    EXPECT_NEAR(op_norm(h.matrix()), max_eigenvalue(h), 1e-12 * max_eigenvalue(h));
  }
}

TEST(AccretiveMatrix, Validation) {
  const AccretiveMatrix a(support::pair_a());
  EXPECT_NEAR(a.re_min_eig(), 2.0, 1e-14);
  try {
    AccretiveMatrix bad(ComplexMatrix{{1.0, 0.0}, {0.0, -I}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAccretive);
  }
  EXPECT_THROW(AccretiveMatrix(ComplexMatrix::diagonal({1.0, 1e-12})), Error);
  EXPECT_NO_THROW(AccretiveMatrix::unchecked(ComplexMatrix::diagonal({1.0, -1.0})));
  EXPECT_THROW(AccretiveMatrix(ComplexMatrix::identity(kMaxDim + 1)), Error);
}

TEST(AccretiveMatrix, CachedEigenvalueMatchesRealPart) {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 1 + k % 6;
    const ComplexMatrix m = support::random_pd(n, rng).matrix() + I * support::random_hermitian(n, rng).matrix();
    const AccretiveMatrix a(m);
    const double want = min_eigenvalue(real_part(m));
    EXPECT_NEAR(a.re_min_eig(), want, 1e-12 * std::abs(want));
  }
}
