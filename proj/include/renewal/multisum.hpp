#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "renewal/cone.hpp"
#include "renewal/field_sampler.hpp"
#include "renewal/prefix_grid.hpp"
#include "renewal/types.hpp"

namespace renewal {

// Query surface shared by the dense (prefix grid) and streaming (regenerate
// on demand) backends.
class SumSource {
 public:
  virtual ~SumSource() = default;
  virtual int dimension() const = 0;
  // S_n for 0 <= n; zero when some component vanishes.
  virtual double lattice_sum(const Lattice& n) const = 0;
  // S at the 2^d cube vertices base + e, indexed by the bitmask of e
  // (bit i set = +1 on axis i). Default: 2^d lattice_sum calls.
  virtual void corner_sums(const Lattice& base, std::span<double> out) const;
};

class DenseSumSource final : public SumSource {
 public:
  explicit DenseSumSource(std::shared_ptr<const PrefixGrid> grid);
  int dimension() const override { return grid_->dimension(); }
  double lattice_sum(const Lattice& n) const override;
  const PrefixGrid& grid() const { return *grid_; }

 private:
  std::shared_ptr<const PrefixGrid> grid_;
};

// Regenerates xi on the fly; a lattice_sum costs one pass over the box but
// needs O(1) storage, which is what the large-t sweeps rely on.
class StreamingSumSource final : public SumSource {
 public:
  explicit StreamingSumSource(FieldSampler sampler);
  int dimension() const override { return sampler_.dimension(); }
  double lattice_sum(const Lattice& n) const override;
  // One pass over the box [1, base+1] accumulating per-slab masses, so all
  // 2^d corners cost a single sweep.
  void corner_sums(const Lattice& base, std::span<double> out) const override;
  const FieldSampler& sampler() const { return sampler_; }

 private:
  FieldSampler sampler_;
};

// The 2^d-corner stencil of the piecewise multilinear interpolation at x.
// Vertex masks follow corner_sums; vertex_weight(e) is the volume of the box
// spanned by x and the vertex opposite to base+e, i.e. the factor multiplying
// S_{base+e}. Weights are nonnegative and sum to 1, and the stencil
// reproduces S_n exactly at lattice points.
struct InterpolationStencil {
  Lattice base;
  Vec frac;

  int dimension() const { return static_cast<int>(base.size()); }
  Lattice vertex(unsigned mask) const;
  double vertex_weight(unsigned mask) const;
  Lattice opposite(unsigned mask) const { return vertex(~mask); }

  // Canonical containing cube: lower corner floor(x), with floor(x) clamped
  // to x-1 at integer coordinates > 0 so lattice points sit at the upper
  // corner of their cube. Any containing cube yields the same value.
  static InterpolationStencil at(const Vec& x);
};

// S_x of the multilinear interpolation; continuous, equals S_n on the
// lattice, vanishes when some coordinate of x is 0.
double interpolate(const SumSource& source, const Vec& x);
double interpolate(const PrefixGrid& grid, const Vec& x);

// Cone-restricted sums: S_n(K) over lattice k <= n with k in K, and the
// count R_n(K) of such points.
struct ConeSums {
  double sum = 0;
  std::int64_t count = 0;
};
ConeSums cone_restricted(const FieldSampler& sampler, const ConeSpec& cone,
                         const Lattice& n);

// d = 2 threshold staircase: widths[m-1] = max{n >= 0 : S_(m,n) < t} for
// rows m = 1,2,... until the first zero width (stored as the last entry).
// Streaming column accumulators; memory O(max_m n_m).
struct Staircase {
  std::vector<std::int64_t> widths;
  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (auto w : widths) s += static_cast<std::uint64_t>(w);
    return s;
  }
};

Staircase staircase_sweep(const FieldSampler& sampler, double t,
                          std::uint64_t max_rows = 0);

}  // namespace renewal
