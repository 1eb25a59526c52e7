#include "renewal/renewal_set.hpp"

#include <cmath>
#include <stdexcept>

namespace renewal {

RenewalSetView::RenewalSetView(double t, FieldSampler sampler)
    : t_(t),
      mu_hint_(sampler.distribution().mu()),
      nonneg_(sampler.distribution().nonnegative()) {
  if (!(t > 0)) throw std::invalid_argument("threshold t must be > 0");
  scale_ = std::pow(t, -1.0 / sampler.dimension());
  source_ = std::make_shared<StreamingSumSource>(std::move(sampler));
}

RenewalSetView::RenewalSetView(double t, std::shared_ptr<const PrefixGrid> grid,
                               double mu_hint, bool nonnegative)
    : t_(t), mu_hint_(mu_hint), nonneg_(nonnegative) {
  if (!(t > 0)) throw std::invalid_argument("threshold t must be > 0");
  if (!(mu_hint > 0)) throw std::invalid_argument("mu_hint must be > 0");
  scale_ = std::pow(t, -1.0 / grid->dimension());
  source_ = std::make_shared<DenseSumSource>(std::move(grid));
}

bool RenewalSetView::contains(const Vec& x) const {
  return interpolate(*source_, x) >= t_;
}

bool RenewalSetView::contains_scaled(const Vec& x) const {
  if ((x < 0).any()) throw std::domain_error("membership requires x >= 0");
  if ((x == 0).any()) return false;  // S vanishes on the coordinate planes
  return contains(Vec(x / scale_));
}

RadialSample RenewalSetView::radial(const Vec& u, double tol,
                                    std::optional<double> hint) const {
  if (!nonneg_)
    throw UnsupportedModeError(
        "radial functions need nonnegative summands (S monotone along rays)");
  if (u.size() != dimension())
    throw std::invalid_argument("direction has wrong dimension");
  if (!(u > 0).all())
    throw std::domain_error(
        "direction with a vanishing component never enters M_t");

  const int d = dimension();
  const double expected = std::pow(mu_hint_ * coord_prod(u), -1.0 / d);
  if (tol <= 0) tol = 1e-9 * expected;

  const double grow = std::pow(t_, 1.0 / d);
  auto sum_at_multiple = [&](double a) {
    return interpolate(*source_, Vec(grow * a * u));
  };

  // Bracket the crossing: SLLN puts it near (mu |u|)^{-1/d}; expand
  // geometrically from there (or from the caller's hint) until straddled.
  double lo, hi;
  {
    double center = hint.value_or(expected);
    double span = hint ? 0.05 * center : 0.3 * center;
    lo = std::max(center - span, 0.0);
    hi = center + span;
    int guard = 0;
    while (sum_at_multiple(hi) < t_ && guard++ < 200) {
      lo = hi;
      hi *= 1.5;
    }
    guard = 0;
    while (lo > 0 && sum_at_multiple(lo) >= t_ && guard++ < 200) {
      hi = lo;
      lo *= 0.5;
      if (hi < tol) break;
    }
  }

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (sum_at_multiple(mid) >= t_)
      hi = mid;
    else
      lo = mid;
  }

  RadialSample rs;
  rs.direction = u;
  rs.value = hi;
  rs.residual = std::abs(sum_at_multiple(hi) - t_);
  return rs;
}

std::vector<Vec> RenewalSetView::boundary_cloud(
    const std::vector<Vec>& directions, double tol) const {
  std::vector<Vec> cloud;
  cloud.reserve(directions.size());
  std::optional<double> hint;
  for (const auto& u : directions) {
    const auto rs = radial(u, tol, hint);
    hint = rs.value;  // adjacent net directions share the crossing scale
    cloud.push_back(rs.value * u);
  }
  return cloud;
}

namespace {

// Dense fallback for small t, any d: enumerate lattice points with S_n < t.
// Axis extents come from marching the coordinate axes until S crosses t.
std::uint64_t deficiency_dense(const FieldSampler& sampler, double t) {
  const int d = sampler.dimension();
  const StreamingSumSource src(sampler);
  Lattice extent(d);
  for (int ax = 0; ax < d; ++ax) {
    Lattice probe = Lattice::Ones(d);
    std::int64_t k = 1;
    for (;; k *= 2) {
      probe[ax] = k;
      if (src.lattice_sum(probe) >= t) break;
      if (k > (std::int64_t{1} << 40))
        throw CapacityError("deficiency enumeration does not terminate");
    }
    extent[ax] = k;
  }
  const auto grid = PrefixGrid::build(sampler, extent);
  std::uint64_t count = 0;
  Lattice n = Lattice::Ones(d);
  for (;;) {
    if (grid.at(n) < t) ++count;
    int ax = d - 1;
    while (ax >= 0 && ++n[ax] > extent[ax]) n[ax--] = 1;
    if (ax < 0) break;
  }
  return count;
}

}  // namespace

std::uint64_t deficiency_count(const FieldSampler& sampler, double t) {
  if (!sampler.distribution().nonnegative())
    throw UnsupportedModeError("N_t needs nonnegative summands");
  if (!(t > 0)) return 0;
  if (sampler.dimension() == 2) return staircase_sweep(sampler, t).total();
  return deficiency_dense(sampler, t);
}

namespace {

std::uint64_t divisor_count_2d(std::uint64_t k) {
  // Hyperbola symmetry: T_k = 2 sum_{i <= sqrt k} floor(k/i) - floor(sqrt k)^2.
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(k)));
  while ((r + 1) * (r + 1) <= k) ++r;
  while (r * r > k) --r;
  std::uint64_t s = 0;
  for (std::uint64_t i = 1; i <= r; ++i) s += k / i;
  return 2 * s - r * r;
}

std::uint64_t divisor_count_rec(int d, std::uint64_t k) {
  if (k == 0) return 0;
  if (d == 1) return k;
  if (d == 2) return divisor_count_2d(k);
  // Group equal quotients floor(k/i) into blocks.
  std::uint64_t total = 0;
  for (std::uint64_t i = 1; i <= k;) {
    const std::uint64_t q = k / i;
    const std::uint64_t last = k / q;
    total += (last - i + 1) * divisor_count_rec(d - 1, q);
    i = last + 1;
  }
  return total;
}

}  // namespace

std::uint64_t divisor_count(int d, std::uint64_t k) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  return divisor_count_rec(d, k);
}

}  // namespace renewal
