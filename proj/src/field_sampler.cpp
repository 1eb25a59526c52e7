#include "renewal/field_sampler.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace renewal {

FieldSampler::FieldSampler(std::uint64_t seed, SummandDistribution dist,
                           int dimension)
    : seed_(seed), dist_(dist), dim_(dimension) {
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  state0_ = mix64(seed ^ 0x6a09e667f3bcc909ULL);
}

std::uint64_t FieldSampler::cell_bits(const Lattice& n) const {
  std::uint64_t h = state0_;
  for (Eigen::Index i = 0; i < n.size(); ++i) h = chain(h, n[i]);
  return h;
}

double FieldSampler::sample_at(const Lattice& n) const {
  if (n.size() != dim_)
    throw std::invalid_argument("lattice index has wrong dimension");
  if ((n < 1).any())
    throw std::domain_error("xi is defined on N^d: all components must be >= 1");
  return value_from_bits(cell_bits(n));
}

double standard_normal_at(std::uint64_t seed, const Lattice& n) {
  std::uint64_t h1 = mix64(seed ^ 0x9216d5d98979fb1bULL);
  std::uint64_t h2 = mix64(seed ^ 0x452821e638d01377ULL);
  for (Eigen::Index i = 0; i < n.size(); ++i) {
    h1 = FieldSampler::chain(h1, n[i]);
    h2 = FieldSampler::chain(h2, n[i]);
  }
  // u1 in (0,1] keeps the log finite.
  const double u1 = static_cast<double>((h1 >> 11) + 1) * 0x1.0p-53;
  const double u2 = uniform01(h2);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace renewal
