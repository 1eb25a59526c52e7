#include "renewal/experiments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "renewal/envelope.hpp"
#include "renewal/prefix_grid.hpp"
#include "renewal/renewal_set.hpp"
#include "renewal/stats.hpp"

namespace renewal {

CltResult clt_sample(const SummandDistribution& dist, int d, const Vec& u,
                     double t, int replicates, std::uint64_t seed,
                     double alpha) {
  if (replicates < 50)
    throw std::invalid_argument(
        "refusing fewer than 50 replicates: KS critical values unreliable");
  if (!dist.nonnegative())
    throw UnsupportedModeError("radial CLT needs nonnegative summands");
  if (u.size() != d) throw std::invalid_argument("direction dimension mismatch");
  if (!(u > 0).all())
    throw std::domain_error("direction must have positive components");
  if (std::abs(euclidean_norm(u) - 1.0) > 1e-9)
    throw std::invalid_argument("direction must be Euclidean-unit");
  if (!(t > 0)) throw std::invalid_argument("t must be positive");

  const double mu = dist.mu();
  const double prod = coord_prod(u);
  const double center = 1.0 / (mu * prod);

  CltResult res;
  res.samples.reserve(replicates);
  for (int rep = 0; rep < replicates; ++rep) {
    const FieldSampler sampler(derive_seed(seed, rep), dist, d);
    const RenewalSetView view(t, sampler);
    const double r = view.radial(u).value;
    res.samples.push_back(std::sqrt(t) * (std::pow(r, d) - center));
  }

  res.limit_variance = dist.sigma2() / (std::pow(mu, 3) * prod * prod);
  res.ks_threshold = ks_critical_value(res.samples.size(), alpha);
  if (dist.sigma2() == 0.0) {
    // Degenerate limit: compare against a unit normal to document the
    // failure rather than dividing by a zero scale.
    res.degenerate = true;
    res.ks_stat = ks_statistic(res.samples,
                               [](double x) { return normal_cdf(x); });
    res.pass = false;
    return res;
  }
  const double sd = std::sqrt(res.limit_variance);
  res.ks_stat = ks_statistic(
      res.samples, [sd](double x) { return normal_cdf(x, 0.0, sd); });
  res.pass = res.ks_stat < res.ks_threshold;
  return res;
}

SectorialResult sectorial_lil_compare(const FieldSampler& sampler,
                                      const ConeSpec& cone,
                                      std::int64_t horizon) {
  const int d = sampler.dimension();
  const auto& dist = sampler.distribution();
  if (!std::isfinite(dist.sigma2()))
    throw std::invalid_argument("sectorial LIL comparison needs E xi^2 < inf");
  if (cone.dimension() != d)
    throw std::invalid_argument("cone/sampler dimension mismatch");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");

  SectorialResult res;
  res.overall_target = std::sqrt(static_cast<double>(d));
  const double mu = dist.mu();
  const double sigma = std::sqrt(dist.sigma2());

  if (sigma == 0.0) {
    // xi = mu a.s.: S_n = mu|n| identically, both suprema vanish.
    res.ratio = std::numeric_limits<double>::quiet_NaN();
    for (std::int64_t m = 1; m <= horizon; m *= 2)
      res.checkpoints.push_back({m, 0.0, 0.0});
    return res;
  }

  auto chi = [](double x) { return std::sqrt(2.0 * x * loglog_ext(x)); };

  if (d == 2) {
    // Row-streamed column accumulators: O(horizon) memory.
    std::vector<double> cols(static_cast<std::size_t>(horizon), 0.0);
    Vec point(2);
    for (std::int64_t m = 1; m <= horizon; ++m) {
      const std::uint64_t hrow =
          FieldSampler::chain(sampler.seed_state(), m);
      double running = 0;
      for (std::int64_t j = 1; j <= horizon; ++j) {
        cols[j - 1] += sampler.value_from_bits(FieldSampler::chain(hrow, j));
        running += cols[j - 1];
        const double prod = static_cast<double>(m) * static_cast<double>(j);
        const double dev = std::abs(running - mu * prod) / (sigma * chi(prod));
        if (dev > res.overall_sup) res.overall_sup = dev;
        point << static_cast<double>(m), static_cast<double>(j);
        if (dev > res.cone_sup && cone.contains(point)) res.cone_sup = dev;
      }
      if ((m & (m - 1)) == 0 || m == horizon)
        res.checkpoints.push_back({m, res.cone_sup, res.overall_sup});
    }
  } else {
    const Lattice extent = Lattice::Constant(d, horizon);
    const auto grid = PrefixGrid::build(sampler, extent);
    Lattice n = Lattice::Ones(d);
    for (;;) {
      const double prod = n.cast<double>().prod();
      const double dev =
          std::abs(grid.at(n) - mu * prod) / (sigma * chi(prod));
      if (dev > res.overall_sup) res.overall_sup = dev;
      if (dev > res.cone_sup && cone.contains(n)) res.cone_sup = dev;
      int ax = d - 1;
      while (ax >= 0 && ++n[ax] > horizon) n[ax--] = 1;
      if (ax < 0) break;
    }
    res.checkpoints.push_back({horizon, res.cone_sup, res.overall_sup});
  }

  res.ratio = res.cone_sup > 0
                  ? res.overall_sup / res.cone_sup
                  : std::numeric_limits<double>::quiet_NaN();
  return res;
}

NtResult n_t_slln_check(const FieldSampler& sampler,
                        std::span<const double> t_grid) {
  const auto& dist = sampler.distribution();
  const int d = sampler.dimension();
  if (!dist.nonnegative())
    throw UnsupportedModeError("N_t needs nonnegative summands");
  if (!moment_summary(dist, d).slln_log_moment_ok)
    throw std::invalid_argument("N_t SLLN needs E(xi log^{d-1} xi) < inf");

  NtResult res;
  double factorial = 1;
  for (int i = 2; i < d; ++i) factorial *= i;
  res.limit = 1.0 / (dist.mu() * factorial);

  for (double t : t_grid) {
    NtRow row;
    row.t = t;
    row.n_t = deficiency_count(sampler, t);
    row.ratio = static_cast<double>(row.n_t) /
                (t * std::pow(log_ext(t), d - 1));
    if (dist.kind() == DistKind::Constant) {
      const double k = std::ceil(t / dist.mu()) - 1.0;
      row.has_oracle = true;
      row.oracle =
          k >= 1.0 ? divisor_count(d, static_cast<std::uint64_t>(k)) : 0;
    }
    res.rows.push_back(row);
  }
  return res;
}

}  // namespace renewal
