#include "sectorlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace sectorlab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NotAccretive: return "NotAccretive";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidNodeCount: return "InvalidNodeCount";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::InvalidWeight: return "InvalidWeight";
    case ErrorKind::InvalidScalar: return "InvalidScalar";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::EvaluationFailure: return "EvaluationFailure";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

// ComplexMatrix --------------------------------------------------------------

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), a_(n * n) {}

ComplexMatrix::ComplexMatrix(std::size_t n, std::vector<Complex> row_major)
    : n_(n), a_(std::move(row_major)) {
  if (a_.size() != n_ * n_) {
    throw Error(ErrorKind::InvalidArgument,
                "expected " + std::to_string(n_ * n_) + " entries, got " + std::to_string(a_.size()));
  }
  if (!all_finite()) throw Error(ErrorKind::InvalidArgument, "matrix has non-finite entries");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : n_(rows.size()) {
  a_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw Error(ErrorKind::InvalidArgument, "matrix is not square");
    a_.insert(a_.end(), row.begin(), row.end());
  }
  if (!all_finite()) throw Error(ErrorKind::InvalidArgument, "matrix has non-finite entries");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> diag) {
  return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(a_.begin(), a_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "operator+");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "operator-");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : a_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator-(ComplexMatrix m) { return m *= -1.0; }
ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs, "operator*");
  const std::size_t n = lhs.dim();
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex l = lhs(i, k);
      if (l == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += l * rhs(k, j);
    }
  return r;
}

ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> x) {
  if (x.size() != m.dim()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
  ComplexVector y(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Complex s{};
    for (std::size_t j = 0; j < m.dim(); ++j) s += m(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "inner product");
  Complex s{};
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

double vector_norm(std::span<const Complex> x) {
  double s = 0.0;
  for (const auto& z : x) s += std::norm(z);
  return std::sqrt(s);
}

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& z : m.data()) s += std::norm(z);
  return std::sqrt(s);
}

double relative_frobenius(const ComplexMatrix& a, const ComplexMatrix& b, double floor) {
  return frobenius_norm(a - b) / std::max(frobenius_norm(b), floor);
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* where) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(where) + ": " + std::to_string(a.dim()) +
                                                  " vs " + std::to_string(b.dim()));
  }
}

// HermitianMatrix ------------------------------------------------------------

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) : m_(m.dim()) {
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    m_(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex z = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m_(i, j) = z;
      m_(j, i) = std::conj(z);
    }
  }
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  return HermitianMatrix(ComplexMatrix::identity(n));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> diag) {
  return HermitianMatrix(ComplexMatrix::diagonal(diag));
}

HermitianMatrix HermitianMatrix::diagonal(std::initializer_list<double> diag) {
  return HermitianMatrix(ComplexMatrix::diagonal(diag));
}

void LoewnerTolerance::validate() const {
  if (!(std::isfinite(absolute) && absolute >= 0.0 && std::isfinite(relative) && relative >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "Loewner tolerance must be finite and non-negative");
  }
}

// Cartesian decomposition ------------------------------------------------------

HermitianMatrix real_part(const ComplexMatrix& a) { return HermitianMatrix(a); }

HermitianMatrix imag_part(const ComplexMatrix& a) {
  // (A - A^*)/(2i) = Herm(-i A)
  return HermitianMatrix(Complex(0.0, -1.0) * a);
}

// Inverse ---------------------------------------------------------------------

namespace {

double one_norm(const ComplexMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

ComplexMatrix inverse(const ComplexMatrix& a, double cond_cap) {
  const std::size_t n = a.dim();
  ComplexMatrix lu = a;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (!(best >= 1e-300)) {
      throw Error(ErrorKind::SingularMatrix, "pivot " + std::to_string(best) + " at column " + std::to_string(k));
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
      std::swap(perm[k], perm[p]);
    }
    const Complex inv_pivot = 1.0 / lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu(i, k) * inv_pivot;
      lu(i, k) = f;
      if (f == Complex{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }

  ComplexMatrix x(n);
  ComplexVector col(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) col[i] = (perm[i] == c) ? 1.0 : 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) col[i] -= lu(i, j) * col[j];
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) col[i] -= lu(i, j) * col[j];
      col[i] /= lu(i, i);
    }
    for (std::size_t i = 0; i < n; ++i) x(i, c) = col[i];
  }

  const double cond = one_norm(a) * one_norm(x);
  if (!(cond <= cond_cap)) {
    throw Error(ErrorKind::IllConditioned, "1-norm condition estimate " + std::to_string(cond) +
                                               " exceeds cap " + std::to_string(cond_cap));
  }
  return x;
}

// Hermitian eigensolver ----------------------------------------------------------

HermEig herm_eig(const HermitianMatrix& h, int max_sweeps) {
  const std::size_t n = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = frobenius_norm(a);
  const double threshold = std::numeric_limits<double>::epsilon() * scale;

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
  };

  int sweep = 0;
  for (; sweep <= max_sweeps; ++sweep) {
    const double off = off_norm();
    if (off == 0.0 || off <= threshold) break;
    if (sweep == max_sweeps) {
      throw Error(ErrorKind::NoConvergence,
                  "Jacobi eigensolver: off-diagonal norm " + std::to_string(off) + " after " +
                      std::to_string(max_sweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Real rotation on the phase-normalized pair, as in the symmetric case.
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = [[c, s e], [-s conj(e), c]] on (p, q); A <- G^* A G, V <- V G.
        const Complex gpq = s * phase;
        const Complex gqp = -s * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp + gqp * akq;
          a(k, q) = gpq * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp + gqp * vkq;
          v(k, q) = gpq * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermEig out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

double min_eigenvalue(const HermitianMatrix& h) {
  if (h.dim() == 0) throw Error(ErrorKind::InvalidArgument, "empty matrix has no eigenvalues");
  return herm_eig(h).values.front();
}

double max_eigenvalue(const HermitianMatrix& h) {
  if (h.dim() == 0) throw Error(ErrorKind::InvalidArgument, "empty matrix has no eigenvalues");
  return herm_eig(h).values.back();
}

// Spectral functions --------------------------------------------------------------

namespace {

template <class F>
HermitianMatrix spectral_apply(const HermitianMatrix& h, const char* name, F&& f) {
  const HermEig e = herm_eig(h);
  if (!e.values.empty() && !(e.values.front() > 0.0)) {
    throw Error(ErrorKind::NotPositiveDefinite,
                std::string(name) + ": smallest eigenvalue " + std::to_string(e.values.front()));
  }
  const std::size_t n = h.dim();
  ComplexMatrix r(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(e.values[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = e.vectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += vik * std::conj(e.vectors(j, k));
    }
  }
  return HermitianMatrix(r);
}

}  // namespace

HermitianMatrix hpd_power(const HermitianMatrix& h, double p) {
  return spectral_apply(h, "hpd_power", [p](double mu) { return std::pow(mu, p); });
}

HermitianMatrix hpd_log(const HermitianMatrix& h) {
  return spectral_apply(h, "hpd_log", [](double mu) { return std::log(mu); });
}

// Order and norms -------------------------------------------------------------------

LoewnerResult loewner_geq(const HermitianMatrix& x, const HermitianMatrix& y, const LoewnerTolerance& tol) {
  require_same_dim(x.matrix(), y.matrix(), "loewner_geq");
  tol.validate();
  const double margin = min_eigenvalue(HermitianMatrix(x.matrix() - y.matrix()));
  const double scale = std::max(op_norm(x), op_norm(y));
  return {margin >= -tol.bound(scale), margin};
}

double op_norm(const ComplexMatrix& a) {
  if (a.dim() == 0) return 0.0;
  const double top = max_eigenvalue(HermitianMatrix(a.adjoint() * a));
  return std::sqrt(std::max(top, 0.0));
}

double op_norm(const HermitianMatrix& h) {
  if (h.dim() == 0) return 0.0;
  const HermEig e = herm_eig(h);
  return std::max(std::abs(e.values.front()), std::abs(e.values.back()));
}

// AccretiveMatrix ----------------------------------------------------------------------

AccretiveMatrix::AccretiveMatrix(ComplexMatrix a) {
  if (a.dim() == 0 || a.dim() > kMaxDim) {
    throw Error(ErrorKind::NotAccretive, "dimension " + std::to_string(a.dim()) + " outside [1, " +
                                             std::to_string(kMaxDim) + "]");
  }
  if (!a.all_finite()) throw Error(ErrorKind::NotAccretive, "matrix has non-finite entries");
  const HermitianMatrix re = real_part(a);
  const HermEig e = herm_eig(re);
  const double lo = e.values.front();
  const double norm = std::max(std::abs(lo), std::abs(e.values.back()));
  if (!(lo > 1e-10 * norm)) {
    throw Error(ErrorKind::NotAccretive,
                "smallest eigenvalue of the real part is " + std::to_string(lo) + " (norm " +
                    std::to_string(norm) + ")");
  }
  a_ = std::move(a);
  re_min_eig_ = lo;
}

AccretiveMatrix AccretiveMatrix::unchecked(ComplexMatrix a) {
  const double lo = a.dim() == 0 ? 0.0 : min_eigenvalue(real_part(a));
  return AccretiveMatrix(std::move(a), lo);
}

}  // namespace sectorlab
