#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "sectorlab/error.hpp"

namespace sectorlab {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Largest dimension accepted for accretive inputs and ensembles.
inline constexpr std::size_t kMaxDim = 64;

/// Dense square complex matrix stored row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// n x n zero matrix.
  explicit ComplexMatrix(std::size_t n);
  /// Takes n*n row-major entries; rejects non-finite values.
  ComplexMatrix(std::size_t n, std::vector<Complex> row_major);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> diag);
  static ComplexMatrix diagonal(std::initializer_list<double> diag);
  static ComplexMatrix scalar(Complex z) { return ComplexMatrix(1, {z}); }

  std::size_t dim() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  Complex& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  std::span<const Complex> data() const noexcept { return a_; }

  ComplexMatrix adjoint() const;
  bool all_finite() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> a_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex s);

ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> x);

/// <x, y> = sum_i x_i conj(y_i); linear in the first argument.
Complex inner(std::span<const Complex> x, std::span<const Complex> y);
double vector_norm(std::span<const Complex> x);

double frobenius_norm(const ComplexMatrix& m);
/// ||a - b||_F / max(||b||_F, floor).
double relative_frobenius(const ComplexMatrix& a, const ComplexMatrix& b,
                          double floor = 1e-300);

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* where);

/// Hermitian matrix. Built by symmetrizing, so M == M^* holds bit-for-bit.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m);

  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix diagonal(std::span<const double> diag);
  static HermitianMatrix diagonal(std::initializer_list<double> diag);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.dim(); }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  friend bool operator==(const HermitianMatrix&, const HermitianMatrix&) = default;

 private:
  ComplexMatrix m_;
};

struct HermEig {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are eigenvectors
};

struct LoewnerTolerance {
  double absolute = 1e-10;
  double relative = 1e-10;

  void validate() const;
  double bound(double scale) const { return absolute + relative * scale; }
};

struct LoewnerResult {
  bool holds = false;
  double margin = 0.0;  // smallest eigenvalue of X - Y
};

/// (A + A^*) / 2
HermitianMatrix real_part(const ComplexMatrix& a);
/// (A - A^*) / (2i)
HermitianMatrix imag_part(const ComplexMatrix& a);

/// Inverse by LU with partial pivoting. Throws SingularMatrix when a pivot
/// falls below 1e-300 and IllConditioned when the 1-norm condition estimate
/// exceeds cond_cap.
ComplexMatrix inverse(const ComplexMatrix& a, double cond_cap = 1e14);

/// Cyclic complex Jacobi eigensolver. Eigenvalues ascending.
HermEig herm_eig(const HermitianMatrix& h, int max_sweeps = 100);

double min_eigenvalue(const HermitianMatrix& h);
double max_eigenvalue(const HermitianMatrix& h);

/// V diag(mu^p) V^*; requires every eigenvalue > 0.
HermitianMatrix hpd_power(const HermitianMatrix& h, double p);
/// V diag(log mu) V^*; requires every eigenvalue > 0.
HermitianMatrix hpd_log(const HermitianMatrix& h);

/// X >= Y in the Loewner order, up to tol scaled by max(||X||, ||Y||).
LoewnerResult loewner_geq(const HermitianMatrix& x, const HermitianMatrix& y,
                          const LoewnerTolerance& tol = {});

/// Largest singular value.
double op_norm(const ComplexMatrix& a);
double op_norm(const HermitianMatrix& h);

/// Matrix with strictly positive definite real part.
class AccretiveMatrix {
 public:
  /// Validates re_min_eig > 1e-10 * ||Re A|| and dim <= kMaxDim; throws NotAccretive.
  explicit AccretiveMatrix(ComplexMatrix a);
  explicit AccretiveMatrix(const HermitianMatrix& h) : AccretiveMatrix(h.matrix()) {}

  /// Skips the positivity threshold. Only for deliberately pathological input.
  static AccretiveMatrix unchecked(ComplexMatrix a);

  const ComplexMatrix& matrix() const noexcept { return a_; }
  std::size_t dim() const noexcept { return a_.dim(); }
  double re_min_eig() const noexcept { return re_min_eig_; }

 private:
  AccretiveMatrix(ComplexMatrix a, double re_min_eig) : a_(std::move(a)), re_min_eig_(re_min_eig) {}

  ComplexMatrix a_;
  double re_min_eig_ = 0.0;
};

}  // namespace sectorlab
