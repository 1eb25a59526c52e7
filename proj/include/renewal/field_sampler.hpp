#pragma once

#include <cstdint>

#include "renewal/distribution.hpp"
#include "renewal/types.hpp"

namespace renewal {

// SplitMix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Independent seed for a replicate/stream id.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed ^ 0x7c159e3779b97f4aULL) ^ stream * kGolden);
}

// Uniform draw in [0,1) from hashed bits (53-bit mantissa).
constexpr double uniform01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Stateless, index-addressable random field {xi_n : n in N^d}: a pure
// function of (seed, n), so any lattice cell can be regenerated on demand
// during streaming sweeps without storing the grid.
class FieldSampler {
 public:
  FieldSampler(std::uint64_t seed, SummandDistribution dist, int dimension);

  double sample_at(const Lattice& n) const;

  // Hash chaining, exposed so grid sweeps can reuse per-axis prefixes.
  static std::uint64_t chain(std::uint64_t h, std::int64_t component) {
    return mix64(h ^ static_cast<std::uint64_t>(component) * kGolden);
  }
  std::uint64_t seed_state() const { return state0_; }
  std::uint64_t cell_bits(const Lattice& n) const;
  double value_from_bits(std::uint64_t bits) const {
    return dist_.quantile(uniform01(bits));
  }

  std::uint64_t seed() const { return seed_; }
  int dimension() const { return dim_; }
  const SummandDistribution& distribution() const { return dist_; }

  FieldSampler with_seed(std::uint64_t seed) const {
    return FieldSampler(seed, dist_, dim_);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t state0_;
  SummandDistribution dist_;
  int dim_;
};

// Deterministic standard normal attached to a lattice cell (Box-Muller on two
// decorrelated hash streams); used by the Chentsov field simulator.
double standard_normal_at(std::uint64_t seed, const Lattice& n);

}  // namespace renewal
