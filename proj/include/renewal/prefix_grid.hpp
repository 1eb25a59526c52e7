#pragma once

#include <cstddef>
#include <vector>

#include "renewal/field_sampler.hpp"
#include "renewal/types.hpp"

namespace renewal {

// Dense multiple sums S_n = sum_{m <= n} xi_m over the box [1, extent],
// with the convention S_n = 0 whenever some component of n is 0 (the zero
// planes are stored, which keeps lookups branch-free at the lattice floor).
// Built by d sequential axis-wise cumulative scans.
class PrefixGrid {
 public:
  static constexpr std::size_t kDefaultBudget = std::size_t{1} << 25;  // entries

  // cell(n) supplies xi_n for lattice n >= 1 (componentwise).
  template <typename CellFn>
  static PrefixGrid build_with(const Lattice& extent, CellFn&& cell,
                               std::size_t budget = kDefaultBudget) {
    PrefixGrid g(extent, budget);
    Lattice n = Lattice::Ones(g.dim_);
    for (;;) {
      g.v_[g.offset(n)] = cell(static_cast<const Lattice&>(n));
      int ax = g.dim_ - 1;
      while (ax >= 0 && ++n[ax] > g.extent_[ax]) n[ax--] = 1;
      if (ax < 0) break;
    }
    g.scan();
    return g;
  }

  static PrefixGrid build(const FieldSampler& sampler, const Lattice& extent,
                          std::size_t budget = kDefaultBudget);

  // Explicit cell values (row-major over the box, last axis fastest); for
  // hand-built fixtures and brute-force oracles.
  static PrefixGrid from_cells(const Lattice& extent,
                               const std::vector<double>& cells);

  // S_n; requires 0 <= n <= extent componentwise.
  double at(const Lattice& n) const;

  // Inclusion-exclusion over the 2^d prefix corners of the cell at n,
  // recovering the sampled xi_n; requires 1 <= n <= extent.
  double cell_mass(const Lattice& n) const;

  int dimension() const { return dim_; }
  const Lattice& extent() const { return extent_; }
  std::size_t size() const { return v_.size(); }

 private:
  PrefixGrid(const Lattice& extent, std::size_t budget);
  void scan();
  std::int64_t offset(const Lattice& n) const {
    std::int64_t o = 0;
    for (int i = 0; i < dim_; ++i) o += n[i] * stride_[i];
    return o;
  }

  int dim_ = 0;
  Lattice extent_;
  std::vector<std::int64_t> stride_;
  std::vector<double> v_;
};

}  // namespace renewal
