#include "renewal/prefix_grid.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace renewal {

PrefixGrid::PrefixGrid(const Lattice& extent, std::size_t budget)
    : dim_(static_cast<int>(extent.size())), extent_(extent) {
  if (dim_ < 1) throw std::invalid_argument("extent must have dimension >= 1");
  if ((extent < 1).any())
    throw std::invalid_argument("extent must be >= 1 componentwise");
  std::size_t total = 1;
  for (int i = 0; i < dim_; ++i) {
    const auto axis = static_cast<std::size_t>(extent[i]) + 1;
    if (total > budget / axis) {
      std::ostringstream os;
      os << "dense prefix grid of " << total << "x" << axis
         << "+ entries exceeds the budget of " << budget
         << "; use the streaming backend";
      throw CapacityError(os.str());
    }
    total *= axis;
  }
  stride_.assign(dim_, 1);
  for (int i = dim_ - 2; i >= 0; --i)
    stride_[i] = stride_[i + 1] * (extent_[i + 1] + 1);
  v_.assign(total, 0.0);
}

void PrefixGrid::scan() {
  // One cumulative pass per axis; natural index order guarantees the
  // neighbour at offset - stride is already scanned.
  const auto total = static_cast<std::int64_t>(v_.size());
  for (int ax = 0; ax < dim_; ++ax) {
    const std::int64_t st = stride_[ax];
    const std::int64_t block = st * (extent_[ax] + 1);
    for (std::int64_t idx = 0; idx < total; ++idx) {
      if (idx % block >= st) v_[idx] += v_[idx - st];
    }
  }
}

PrefixGrid PrefixGrid::build(const FieldSampler& sampler, const Lattice& extent,
                             std::size_t budget) {
  if (sampler.dimension() != extent.size())
    throw std::invalid_argument("sampler/extent dimension mismatch");
  return build_with(
      extent, [&](const Lattice& n) { return sampler.sample_at(n); }, budget);
}

PrefixGrid PrefixGrid::from_cells(const Lattice& extent,
                                  const std::vector<double>& cells) {
  const auto expected =
      static_cast<std::size_t>(extent.cast<double>().prod());
  if (cells.size() != expected)
    throw std::invalid_argument("cell count does not match extent");
  std::size_t pos = 0;
  return build_with(extent,
                    [&](const Lattice&) { return cells[pos++]; });
}

double PrefixGrid::at(const Lattice& n) const {
  if (n.size() != dim_)
    throw std::invalid_argument("lattice index has wrong dimension");
  if ((n < 0).any() || (n > extent_).any())
    throw std::out_of_range("lattice index outside the stored grid");
  return v_[offset(n)];
}

double PrefixGrid::cell_mass(const Lattice& n) const {
  if ((n < 1).any())
    throw std::domain_error("cell mass needs all components >= 1");
  double mass = 0;
  const unsigned corners = 1u << dim_;
  Lattice m(dim_);
  for (unsigned e = 0; e < corners; ++e) {
    for (int i = 0; i < dim_; ++i) m[i] = n[i] - ((e >> i) & 1u);
    const int drop = std::popcount(e);
    mass += (drop % 2 == 0 ? 1.0 : -1.0) * at(m);
  }
  return mass;
}

}  // namespace renewal
