#include "sectorlab/ensemble.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sectorlab {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a; only used to turn purpose tags into stream offsets.
std::uint64_t hash_tag(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void check_dim(std::size_t dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw Error(ErrorKind::InvalidArgument, "dimension " + std::to_string(dim) + " outside [1, " +
                                                std::to_string(kMaxDim) + "]");
  }
}

}  // namespace

std::uint64_t RandomStream::derive(std::uint64_t seed, std::uint64_t index, std::string_view tag) {
  return mix64(mix64(seed ^ 0x9e3779b97f4a7c15ULL) + mix64(index + 0x632be59bd9b4e019ULL) + hash_tag(tag));
}

std::uint64_t RandomStream::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix64(state_);
}

double RandomStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RandomStream::normal() {
  // Box-Muller; 1 - u keeps the logarithm finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex RandomStream::complex_normal() {
  return {normal() * std::numbers::sqrt2 / 2.0, normal() * std::numbers::sqrt2 / 2.0};
}

void SectorSpec::validate() const {
  check_dim(dim);
  if (!(angle >= 0.0 && angle < std::numbers::pi / 2.0)) {
    throw Error(ErrorKind::InvalidArgument, "sector angle must lie in [0, pi/2), got " + std::to_string(angle));
  }
  if (!(cond_cap >= 1.0) || !std::isfinite(cond_cap)) {
    throw Error(ErrorKind::InvalidArgument, "cond_cap must be >= 1");
  }
}

ComplexMatrix random_unitary(std::size_t dim, RandomStream& rng) {
  check_dim(dim);
  std::vector<ComplexVector> cols(dim, ComplexVector(dim));
  for (auto& c : cols)
    for (auto& z : c) z = rng.complex_normal();

  // Modified Gram-Schmidt, run twice for orthogonality at working precision.
  for (std::size_t j = 0; j < dim; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        const Complex proj = inner(cols[j], cols[k]);
        for (std::size_t i = 0; i < dim; ++i) cols[j][i] -= proj * cols[k][i];
      }
    }
    const double norm = vector_norm(cols[j]);
    if (!(norm > 1e-300)) throw Error(ErrorKind::SingularMatrix, "degenerate Gaussian draw");
    for (auto& z : cols[j]) z /= norm;
  }

  ComplexMatrix u(dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) u(i, j) = cols[j][i];
  return u;
}

namespace {

HermitianMatrix conjugate_diagonal(const ComplexMatrix& u, const std::vector<double>& diag) {
  const std::size_t n = u.dim();
  ComplexMatrix r(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const Complex uik = u(i, k) * diag[k];
      for (std::size_t j = 0; j < n; ++j) r(i, j) += uik * std::conj(u(j, k));
    }
  return HermitianMatrix(r);
}

}  // namespace

HermitianMatrix random_hpd(std::size_t dim, double cond_cap, std::uint64_t seed) {
  SectorSpec{dim, 0.0, cond_cap, seed}.validate();
  RandomStream rng(RandomStream::derive(seed, 0, "hpd"));
  const double half_log = 0.5 * std::log(cond_cap);
  std::vector<double> mu(dim);
  for (auto& m : mu) m = std::exp(rng.uniform(-half_log, half_log));
  const ComplexMatrix u = random_unitary(dim, rng);
  return conjugate_diagonal(u, mu);
}

AccretiveMatrix random_accretive(const SectorSpec& spec) {
  spec.validate();
  const HermitianMatrix p = random_hpd(spec.dim, spec.cond_cap, spec.seed);
  if (spec.angle == 0.0) return AccretiveMatrix(p);

  RandomStream rng(RandomStream::derive(spec.seed, 0, "imag"));
  std::vector<double> spectrum(spec.dim);
  for (auto& s : spectrum) s = rng.uniform(-1.0, 1.0);
  const HermitianMatrix h = conjugate_diagonal(random_unitary(spec.dim, rng), spectrum);

  const HermitianMatrix p_half = hpd_power(p, 0.5);
  const HermitianMatrix imag(p_half.matrix() * h.matrix() * p_half.matrix());
  return AccretiveMatrix(p.matrix() + Complex(0.0, std::tan(spec.angle)) * imag.matrix());
}

std::vector<ComplexVector> random_unit_vectors(std::size_t dim, std::size_t count, std::uint64_t seed) {
  check_dim(dim);
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "need at least one vector");
  RandomStream rng(RandomStream::derive(seed, 0, "vectors"));
  std::vector<ComplexVector> out(count, ComplexVector(dim));
  for (auto& v : out) {
    double norm = 0.0;
    while (!(norm > 1e-150)) {
      for (auto& z : v) z = rng.complex_normal();
      norm = vector_norm(v);
    }
    for (auto& z : v) z /= norm;
  }
  return out;
}

}  // namespace sectorlab
