#include "renewal/multisum.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace renewal {

void SumSource::corner_sums(const Lattice& base, std::span<double> out) const {
  const int d = dimension();
  const unsigned corners = 1u << d;
  if (out.size() < corners)
    throw std::invalid_argument("corner_sums output span too small");
  Lattice n(d);
  for (unsigned e = 0; e < corners; ++e) {
    for (int i = 0; i < d; ++i) n[i] = base[i] + ((e >> i) & 1u);
    out[e] = lattice_sum(n);
  }
}

DenseSumSource::DenseSumSource(std::shared_ptr<const PrefixGrid> grid)
    : grid_(std::move(grid)) {
  if (!grid_) throw std::invalid_argument("null prefix grid");
}

double DenseSumSource::lattice_sum(const Lattice& n) const {
  return grid_->at(n);  // zero planes are stored
}

StreamingSumSource::StreamingSumSource(FieldSampler sampler)
    : sampler_(std::move(sampler)) {}

double StreamingSumSource::lattice_sum(const Lattice& n) const {
  const int d = sampler_.dimension();
  if (n.size() != d)
    throw std::invalid_argument("lattice index has wrong dimension");
  if ((n < 0).any()) throw std::domain_error("negative lattice index");
  if ((n == 0).any()) return 0.0;

  if (d == 2) {
    // Row-chained hashes: one mix per cell.
    double total = 0;
    for (std::int64_t i = 1; i <= n[0]; ++i) {
      const std::uint64_t hrow =
          FieldSampler::chain(sampler_.seed_state(), i);
      double row = 0;
      for (std::int64_t j = 1; j <= n[1]; ++j)
        row += sampler_.value_from_bits(FieldSampler::chain(hrow, j));
      total += row;
    }
    return total;
  }

  double total = 0;
  Lattice k = Lattice::Ones(d);
  for (;;) {
    total += sampler_.sample_at(k);
    int ax = d - 1;
    while (ax >= 0 && ++k[ax] > n[ax]) k[ax--] = 1;
    if (ax < 0) break;
  }
  return total;
}

void StreamingSumSource::corner_sums(const Lattice& base,
                                     std::span<double> out) const {
  const int d = sampler_.dimension();
  const unsigned corners = 1u << d;
  if (out.size() < corners)
    throw std::invalid_argument("corner_sums output span too small");
  if ((base < 0).any()) throw std::domain_error("negative lattice index");

  if (d == 2) {
    // Single pass over [1, base+1]^2 tracking the last row/column slabs:
    // S(M,N)=T, S(M-1,N)=T-R, S(M,N-1)=T-C, S(M-1,N-1)=T-R-C+corner.
    const std::int64_t M = base[0] + 1, N = base[1] + 1;
    double T = 0, R = 0, C = 0, corner = 0;
    for (std::int64_t i = 1; i <= M; ++i) {
      const std::uint64_t hrow =
          FieldSampler::chain(sampler_.seed_state(), i);
      double row = 0;
      for (std::int64_t j = 1; j < N; ++j)
        row += sampler_.value_from_bits(FieldSampler::chain(hrow, j));
      const double last =
          sampler_.value_from_bits(FieldSampler::chain(hrow, N));
      row += last;
      C += last;
      T += row;
      if (i == M) {
        R = row;
        corner = last;
      }
    }
    out[3] = T;                   // base + (1,1)
    out[2] = T - R;               // base + (0,1): drop the last row
    out[1] = T - C;               // base + (1,0): drop the last column
    out[0] = T - R - C + corner;  // base + (0,0)
    return;
  }

  // Generic d: one pass over [1, base+1]^d; slab masks record which
  // coordinates sit at the top plane, and S_{base+e} sums the slabs whose
  // mask is a subset of e. Corners with a zero component pick up no mass.
  std::vector<double> slab(corners, 0.0);
  Lattice top = base + 1;
  Lattice k = Lattice::Ones(d);
  for (;;) {
    unsigned mask = 0;
    for (int i = 0; i < d; ++i)
      if (k[i] == top[i]) mask |= 1u << i;
    slab[mask] += sampler_.sample_at(k);
    int ax = d - 1;
    while (ax >= 0 && ++k[ax] > top[ax]) k[ax--] = 1;
    if (ax < 0) break;
  }
  for (unsigned e = 0; e < corners; ++e) {
    double s = 0;
    for (unsigned m = 0; m < corners; ++m)
      if ((m & ~e) == 0) s += slab[m];
    out[e] = s;
  }
}

Lattice InterpolationStencil::vertex(unsigned mask) const {
  const int d = dimension();
  Lattice v(d);
  for (int i = 0; i < d; ++i) v[i] = base[i] + ((mask >> i) & 1u);
  return v;
}

double InterpolationStencil::vertex_weight(unsigned mask) const {
  const int d = dimension();
  double w = 1.0;
  for (int i = 0; i < d; ++i)
    w *= ((mask >> i) & 1u) ? frac[i] : 1.0 - frac[i];
  return w;
}

InterpolationStencil InterpolationStencil::at(const Vec& x) {
  if ((x < 0).any())
    throw std::domain_error("interpolation point must be >= 0 componentwise");
  const int d = static_cast<int>(x.size());
  InterpolationStencil st;
  st.base = Lattice(d);
  st.frac = Vec(d);
  for (int i = 0; i < d; ++i) {
    double fl = std::floor(x[i]);
    if (fl == x[i] && x[i] > 0) fl -= 1.0;  // lattice points top their cube
    st.base[i] = static_cast<std::int64_t>(fl);
    st.frac[i] = x[i] - fl;
  }
  return st;
}

double interpolate(const SumSource& source, const Vec& x) {
  const int d = source.dimension();
  if (x.size() != d) throw std::invalid_argument("point has wrong dimension");
  const auto st = InterpolationStencil::at(x);
  const unsigned corners = 1u << d;
  std::vector<double> s(corners);
  source.corner_sums(st.base, s);
  double v = 0;
  for (unsigned e = 0; e < corners; ++e) {
    const double w = st.vertex_weight(e);
    if (w != 0.0) v += w * s[e];
  }
  return v;
}

double interpolate(const PrefixGrid& grid, const Vec& x) {
  // Borrowed view; no ownership transfer.
  DenseSumSource src(std::shared_ptr<const PrefixGrid>(&grid, [](auto*) {}));
  return interpolate(src, x);
}

ConeSums cone_restricted(const FieldSampler& sampler, const ConeSpec& cone,
                         const Lattice& n) {
  const int d = sampler.dimension();
  if (cone.dimension() != d)
    throw std::invalid_argument("cone/sampler dimension mismatch");
  if (n.size() != d || (n < 1).any())
    throw std::domain_error("cone sums need n >= 1 componentwise");
  ConeSums cs;
  Lattice k = Lattice::Ones(d);
  for (;;) {
    if (cone.contains(k)) {
      cs.sum += sampler.sample_at(k);
      ++cs.count;
    }
    int ax = d - 1;
    while (ax >= 0 && ++k[ax] > n[ax]) k[ax--] = 1;
    if (ax < 0) break;
  }
  return cs;
}

Staircase staircase_sweep(const FieldSampler& sampler, double t,
                          std::uint64_t max_rows) {
  if (sampler.dimension() != 2)
    throw std::invalid_argument("staircase sweep is d = 2 only");
  if (!sampler.distribution().nonnegative())
    throw UnsupportedModeError(
        "staircase sweep needs nonnegative summands (monotone S)");
  if (!(t > 0)) throw std::invalid_argument("threshold t must be > 0");

  Staircase st;
  // cols[j-1] = sum_{i<=m} xi_(i,j). Widths are nonincreasing in m because S
  // is coordinatewise nondecreasing, so row 1 fixes the maximal width and
  // later rows only need columns up to the previous width + 1.
  std::vector<double> cols;
  std::int64_t prev_width = -1;  // -1: first row, grow freely
  for (std::uint64_t m = 1;; ++m) {
    const std::uint64_t hrow = FieldSampler::chain(
        sampler.seed_state(), static_cast<std::int64_t>(m));
    double run = 0;
    std::int64_t width = 0;
    const std::int64_t limit =
        prev_width < 0 ? std::numeric_limits<std::int64_t>::max()
                       : prev_width + 1;
    for (std::int64_t j = 1; j <= limit; ++j) {
      if (prev_width < 0 && static_cast<std::size_t>(j) > cols.size())
        cols.push_back(0.0);
      if (static_cast<std::size_t>(j) > cols.size()) break;
      cols[j - 1] +=
          sampler.value_from_bits(FieldSampler::chain(hrow, j));
      run += cols[j - 1];
      if (run >= t) break;
      width = j;
    }
    st.widths.push_back(width);
    prev_width = width;
    // Exactness of the stopping rule: width == 0 means S_(m,1) >= t, and the
    // column sums only grow with m, so every later row also has S_(m',1) >= t
    // and contributes width 0. Nothing is truncated.
    if (width == 0) break;
    if (max_rows && m >= max_rows)
      throw std::runtime_error("staircase sweep exceeded max_rows");
  }
  return st;
}

}  // namespace renewal
