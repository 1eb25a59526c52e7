#pragma once

#include <cstdint>
#include <memory>

#include "renewal/prefix_grid.hpp"
#include "renewal/types.hpp"

namespace renewal {

// Simulated Chentsov field (Brownian sheet) on the grid of spacing h = 1/m
// over [0, extent]^d: normalized cumulative sums of i.i.d. standard Gaussian
// cell increments scaled by h^{d/2}. At grid points the covariance is exactly
// E(Z_x Z_y) = |x ^ y| (componentwise minimum, coordinate product); between
// grid points values are interpolated multilinearly. Z vanishes on the
// coordinate faces.
class ChentsovPath {
 public:
  ChentsovPath(int d, int resolution_m, std::uint64_t seed, int extent = 1);

  double value(const Vec& x) const;      // domain error outside [0, extent]^d
  double at_grid(const Lattice& k) const;  // grid index, 0 <= k <= m * extent

  int dimension() const { return d_; }
  double h() const { return h_; }
  int resolution() const { return m_; }
  int extent() const { return extent_; }

 private:
  int d_, m_, extent_;
  double h_;
  std::shared_ptr<const PrefixGrid> prefix_;
};

// zeta_u = |u|^{-1} Z_{u / |u|^{1/d}} for u in the open orthant; the
// extrapolation target lies on the unit-coordinate-product surface, which is
// scale-invariant, so zeta_{cu} = c^{-d} zeta_u holds identically per path.
double zeta_extrapolate(const ChentsovPath& path, const Vec& u);

}  // namespace renewal
