#include "renewal/chentsov.hpp"

#include <cmath>
#include <stdexcept>

#include "renewal/field_sampler.hpp"
#include "renewal/multisum.hpp"

namespace renewal {

ChentsovPath::ChentsovPath(int d, int resolution_m, std::uint64_t seed,
                           int extent)
    : d_(d), m_(resolution_m), extent_(extent) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (resolution_m < 1)
    throw std::invalid_argument("resolution must be h = 1/m with integer m");
  if (extent < 1) throw std::invalid_argument("extent must be >= 1");
  h_ = 1.0 / m_;
  const double scale = std::pow(h_, d / 2.0);
  const Lattice cells = Lattice::Constant(d, std::int64_t{m_} * extent_);
  prefix_ = std::make_shared<const PrefixGrid>(PrefixGrid::build_with(
      cells, [&](const Lattice& n) {
        return scale * standard_normal_at(seed, n);
      }));
}

double ChentsovPath::at_grid(const Lattice& k) const { return prefix_->at(k); }

double ChentsovPath::value(const Vec& x) const {
  if (x.size() != d_) throw std::invalid_argument("point has wrong dimension");
  if ((x < 0).any() || (x > static_cast<double>(extent_)).any())
    throw std::domain_error("point outside the simulated grid domain");
  return interpolate(*prefix_, Vec(x / h_));
}

double zeta_extrapolate(const ChentsovPath& path, const Vec& u) {
  if (!(u > 0).all())
    throw std::domain_error("zeta needs u in the open orthant");
  const double p = coord_prod(u);
  const Vec target = u / std::pow(p, 1.0 / path.dimension());
  if ((target > static_cast<double>(path.extent())).any())
    throw std::domain_error("extrapolation target outside the grid");
  return path.value(target) / p;
}

}  // namespace renewal
