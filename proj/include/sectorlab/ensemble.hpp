#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "sectorlab/linalg.hpp"

namespace sectorlab {

/// Name recorded in reports so frozen baselines stay portable.
inline constexpr std::string_view kGeneratorName = "splitmix64/box-muller";

/// SplitMix64 stream. Every draw is a pure function of the starting state, and
/// independent streams come from derive(seed, index, tag).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index, std::string_view tag);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  /// Circularly symmetric, E|z|^2 = 1.
  Complex complex_normal();

 private:
  std::uint64_t state_;
};

struct SectorSpec {
  std::size_t dim = 2;
  double angle = 0.0;     // radians in [0, pi/2)
  double cond_cap = 10.0; // bound on the condition number of the real part
  std::uint64_t seed = 0;

  void validate() const;
};

/// Haar-distributed unitary from QR of a complex Gaussian matrix.
ComplexMatrix random_unitary(std::size_t dim, RandomStream& rng);

/// U diag(mu) U^* with log-uniform mu in [cond_cap^-1/2, cond_cap^1/2].
HermitianMatrix random_hpd(std::size_t dim, double cond_cap, std::uint64_t seed);

/// A = P + i tan(angle) P^1/2 H P^1/2 with P = random_hpd and ||H|| <= 1, so
/// Re A = P and the numerical range sits in the sector |arg z| <= angle.
AccretiveMatrix random_accretive(const SectorSpec& spec);

/// Normalized complex Gaussian vectors.
std::vector<ComplexVector> random_unit_vectors(std::size_t dim, std::size_t count, std::uint64_t seed);

}  // namespace sectorlab
