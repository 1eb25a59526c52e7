#include "renewal/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "renewal/limit_set.hpp"
#include "renewal/renewal_set.hpp"
#include "renewal/set_distance.hpp"

namespace renewal {

namespace {

// Radial threshold of H(c) along u, with nonpositive levels vacuous.
double h_threshold(double level, double dir_prod, int d) {
  if (level <= 0) return 0.0;
  return std::pow(level / dir_prod, 1.0 / d);
}

ConeSpec window_net_cone(int d, double mu, double window) {
  if (d == 2) {
    const auto [a, b] = window_cone_2d(1.0 / mu, window);
    return ConeSpec::angle_interval(a, b);
  }
  // d = 3: aperture wide enough that the H boundary inside the cone stays
  // within the window; min u >= theta max u bounds |u| from below by
  // theta^{d-1} max^d >= theta^{d-1} d^{-d/2}.
  const double level = 1.0 / mu;
  const double theta = std::clamp(
      std::sqrt(level * std::pow(3.0, 1.5) / std::pow(window, 3)), 1e-3, 1.0);
  return ConeSpec::aperture(3, theta);
}

}  // namespace

TrajectoryRecord run_trajectory(const FieldSampler& sampler,
                                const TrajectoryOptions& options) {
  const int d = sampler.dimension();
  const auto& dist = sampler.distribution();
  if (!dist.nonnegative())
    throw UnsupportedModeError("trajectories need nonnegative summands");
  if (options.t_grid.empty())
    throw std::invalid_argument("empty threshold grid");
  if (!std::is_sorted(options.t_grid.begin(), options.t_grid.end()))
    throw std::invalid_argument("threshold grid must be ascending");
  if (d > 3) throw std::invalid_argument("trajectories support d <= 3");

  TrajectoryRecord rec;
  rec.d = d;
  rec.mu = dist.mu();
  // Infinite variance is allowed (the sectorial SLLN needs only a beta
  // moment); the LIL envelopes then degenerate to vacuous flags.
  rec.sigma = std::sqrt(dist.sigma2());
  rec.degenerate_sigma = rec.sigma == 0.0;
  rec.wichura_ok = moment_summary(dist, d).wichura_ok;
  rec.ts = options.t_grid;
  rec.beta = options.beta;
  rec.eps = options.eps;
  rec.gamma_mult = options.gamma_mult;
  rec.cone = options.cone ? *options.cone : ConeSpec::aperture(d, 0.5);
  if (rec.cone->dimension() != d)
    throw std::invalid_argument("cone/sampler dimension mismatch");

  const auto phi = EnvelopeFn::phi();
  const double t_min = options.t_grid.front();
  const double gamma = options.gamma_mult * std::pow(rec.mu, -1.5);
  double c_max = options.eps * std::pow(t_min, 1.0 / options.beta - 1.0);
  if (std::isfinite(rec.sigma))
    c_max = std::max(c_max,
                     gamma * rec.sigma * phi(t_min) * std::sqrt(double(d)));
  rec.window = options.window > 0 ? options.window
                                  : default_window(rec.mu, c_max, d);

  // Shared direction net over the window cone; the LIL cone is a sub-cone
  // whose members get positive quadrature weights.
  if (d == 1) {
    rec.directions = {Vec::Ones(1)};
    rec.cone_weights = {1.0};
    rec.in_cone = {1};
  } else if (d == 2) {
    const auto net_cone = window_net_cone(2, rec.mu, rec.window);
    const auto [wa, wb] = net_cone.angle_range_2d();
    const auto [ka, kb] = rec.cone->angle_range_2d();
    if (ka < wa || kb > wb)
      throw std::invalid_argument(
          "LIL cone must fit inside the window cone; widen the window");
    rec.directions = direction_net_2d(wa, wb, options.directions);
    const double h = (wb - wa) / options.directions;
    for (int i = 0; i < options.directions; ++i) {
      const double lo = wa + i * h, hi = lo + h;
      // Clipped midpoint weight of [lo, hi] against the cone range [ka, kb].
      const double w = std::max(0.0, std::min(hi, kb) - std::max(lo, ka));
      rec.cone_weights.push_back(w);
      rec.in_cone.push_back(
          rec.cone->contains(rec.directions[i]) ? 1 : 0);
    }
  } else {
    rec.directions =
        direction_net_3d(window_net_cone(3, rec.mu, rec.window),
                         options.directions);
    for (const auto& u : rec.directions) {
      rec.in_cone.push_back(rec.cone->contains(u) ? 1 : 0);
      rec.cone_weights.push_back(0.0);  // rho_tri is d <= 2 only
    }
  }
  for (const auto& u : rec.directions) rec.dir_prods.push_back(coord_prod(u));

  const auto n_t = rec.ts.size();
  const auto n_dir = rec.directions.size();
  rec.radials.resize(static_cast<Eigen::Index>(n_t),
                     static_cast<Eigen::Index>(n_dir));

  const LimitSet limit(rec.mu, 0.0);
  rec.lil_const_h = rec.sigma * std::pow(rec.mu, -0.5 - 1.0 / d) /
                    std::sqrt(static_cast<double>(d));
  if (d <= 2) {
    const LkMethod method =
        (d == 2 && rec.cone->kind() == ConeKind::AngleInterval)
            ? LkMethod::Analytic2d
            : LkMethod::Quadrature;
    rec.lil_const_tri =
        rec.sigma * std::pow(rec.mu, -1.5) * l_k(*rec.cone, method).value;
  }

  double running_sup_h = 0, running_sup_tri = 0;
  double running_min_h = std::numeric_limits<double>::infinity();
  double running_min_tri = running_min_h;
  std::uint64_t spot_stream = mix64(options.spot_seed ^ sampler.seed());

  std::vector<double> h_radials(n_dir);
  for (std::size_t i = 0; i < n_dir; ++i)
    h_radials[i] = limit.radial(rec.directions[i]);

  for (std::size_t ti = 0; ti < n_t; ++ti) {
    const double t = rec.ts[ti];
    const RenewalSetView view(t, sampler);
    TrajectoryRow row;
    row.t = t;
    row.phi_t = phi(t);

    // Radial sweep with warm-started brackets.
    std::optional<double> hint;
    std::vector<double> r(n_dir);
    double tol_abs = 0;
    for (std::size_t i = 0; i < n_dir; ++i) {
      const double expected =
          std::pow(rec.mu * rec.dir_prods[i], -1.0 / d);
      const double tol = options.radial_tol_rel * expected;
      tol_abs = std::max(tol_abs, tol);
      const auto rs = view.radial(rec.directions[i], tol, hint);
      hint = rs.value;
      r[i] = rs.value;
      rec.radials(static_cast<Eigen::Index>(ti),
                  static_cast<Eigen::Index>(i)) = rs.value;
    }
    rec.radial_slack = 10.0 * tol_abs;

    // Windowed Hausdorff against H from the shared net.
    SetSample m_side;
    m_side.boundary.reserve(n_dir);
    for (std::size_t i = 0; i < n_dir; ++i)
      m_side.boundary.push_back(r[i] * rec.directions[i]);
    m_side.contains = [&view](const Vec& x) { return view.contains_scaled(x); };
    const SetSample h_side = limit_set_sample(limit, rec.directions);
    const auto hd = hausdorff_estimate(m_side, h_side, rec.window);
    row.rho_h = hd.value;
    row.hausdorff_truncated = hd.truncation_warning;

    // Localized symmetric difference over the LIL cone (d <= 2).
    row.rho_tri = d <= 2 ? symdiff_from_radials(r, h_radials,
                                                rec.cone_weights, d)
                         : std::numeric_limits<double>::quiet_NaN();

    row.ratio_h = row.rho_h / row.phi_t;
    row.ratio_tri = row.rho_tri / row.phi_t;
    running_sup_h = std::max(running_sup_h, row.ratio_h);
    running_sup_tri = std::max(running_sup_tri, row.ratio_tri);
    row.running_sup_h = running_sup_h;
    row.running_sup_tri = running_sup_tri;

    row.sqrt_t_rho_h = std::sqrt(t) * row.rho_h;
    row.sqrt_t_rho_tri = std::sqrt(t) * row.rho_tri;
    running_min_h = std::min(running_min_h, row.sqrt_t_rho_h);
    running_min_tri = std::min(running_min_tri, row.sqrt_t_rho_tri);
    row.running_min_h = running_min_h;
    row.running_min_tri = running_min_tri;

    // SLLN flags at (beta, eps): H(c) subset M subset H(-c).
    {
      const double c = options.eps * std::pow(t, 1.0 / options.beta - 1.0);
      double margin_sub = std::numeric_limits<double>::infinity();
      double margin_sup = margin_sub;
      for (std::size_t i = 0; i < n_dir; ++i) {
        margin_sub = std::min(
            margin_sub,
            h_threshold(1.0 / rec.mu + c, rec.dir_prods[i], d) - r[i]);
        margin_sup = std::min(
            margin_sup,
            r[i] - h_threshold(1.0 / rec.mu - c, rec.dir_prods[i], d));
      }
      row.slln_margin_subset = margin_sub;
      row.slln_margin_superset = margin_sup;
      row.slln_subset_ok = margin_sub >= -rec.radial_slack;
      row.slln_superset_ok = margin_sup >= -rec.radial_slack;

      // Membership spot checks just off the envelope boundaries.
      for (int s = 0; s < options.spot_checks; ++s) {
        spot_stream = mix64(spot_stream + kGolden);
        const std::size_t i = spot_stream % n_dir;
        spot_stream = mix64(spot_stream + kGolden);
        const double delta = 0.005 + 0.045 * uniform01(spot_stream);
        const Vec& u = rec.directions[i];
        const double in_level = 1.0 / rec.mu + c;
        if (in_level > 0) {
          const Vec x = (1.0 + delta) *
                        h_threshold(in_level, rec.dir_prods[i], d) * u;
          if (!m_side.contains(x)) row.slln_subset_ok = false;
        }
        const double out_level = 1.0 / rec.mu - c;
        if (out_level > 0) {
          const Vec x = (1.0 - delta) *
                        h_threshold(out_level, rec.dir_prods[i], d) * u;
          if (m_side.contains(x)) row.slln_superset_ok = false;
        }
      }
    }

    // LIL flags at gamma = -+ gamma_mult mu^{-3/2} against H_K(gamma sigma
    // phi); outside-cone directions use the sqrt(d) branch. With infinite
    // variance the envelopes are vacuous and the flags stay true.
    if (std::isfinite(rec.sigma)) {
      const double c_minus = -gamma * rec.sigma * row.phi_t;
      const double c_plus = gamma * rec.sigma * row.phi_t;
      const double sd = std::sqrt(static_cast<double>(d));
      bool sub = true, sup = true;
      for (std::size_t i = 0; i < n_dir; ++i) {
        const double branch = rec.in_cone[i] ? 1.0 : sd;
        const double thr_minus = h_threshold(
            1.0 / rec.mu + c_minus * branch, rec.dir_prods[i], d);
        const double thr_plus = h_threshold(
            1.0 / rec.mu + c_plus * branch, rec.dir_prods[i], d);
        if (r[i] < thr_minus - rec.radial_slack) sub = false;
        if (r[i] > thr_plus + rec.radial_slack) sup = false;
      }
      row.lil_subset_ok = sub;
      row.lil_superset_ok = sup;
    }

    rec.rows.push_back(row);
  }
  return rec;
}

namespace {
bool clean_side(const std::vector<double>& ts, const std::vector<char>& ok,
                double t_from) {
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (ts[i] >= t_from * (1.0 - 1e-12) && !ok[i]) return false;
  return true;
}
}  // namespace

bool InclusionReport::clean_from(double t_from) const {
  return clean_side(ts, subset_ok, t_from) &&
         clean_side(ts, superset_ok, t_from);
}
bool InclusionReport::subset_clean_from(double t_from) const {
  return clean_side(ts, subset_ok, t_from);
}
bool InclusionReport::superset_clean_from(double t_from) const {
  return clean_side(ts, superset_ok, t_from);
}

namespace {

InclusionReport inclusion_check_impl(const TrajectoryRecord& record,
                                     const EnvelopeFn& p, double eps,
                                     bool cone_only) {
  InclusionReport rep;
  rep.ts = record.ts;
  const int d = record.d;
  for (std::size_t ti = 0; ti < record.ts.size(); ++ti) {
    const double t = record.ts[ti];
    const double c = eps * p(t) / t;
    bool sub = true, sup = true;
    for (std::size_t i = 0; i < record.directions.size(); ++i) {
      if (cone_only && !record.in_cone[i]) continue;
      const double r = record.radials(static_cast<Eigen::Index>(ti),
                                      static_cast<Eigen::Index>(i));
      const double thr_plus =
          h_threshold(1.0 / record.mu + c, record.dir_prods[i], d);
      const double thr_minus =
          h_threshold(1.0 / record.mu - c, record.dir_prods[i], d);
      if (r > thr_plus + record.radial_slack) sub = false;
      if (r < thr_minus - record.radial_slack) sup = false;
    }
    rep.subset_ok.push_back(sub);
    rep.superset_ok.push_back(sup);
    if (!sub || !sup) rep.last_violation_t = t;
  }
  return rep;
}

}  // namespace

InclusionReport inclusion_check(const TrajectoryRecord& record,
                                const EnvelopeFn& p, double eps) {
  return inclusion_check_impl(record, p, eps, /*cone_only=*/false);
}

InclusionReport slln_inclusion_check(const TrajectoryRecord& record,
                                     double beta, double eps) {
  return inclusion_check(record, EnvelopeFn::power(beta), eps);
}

InclusionReport sectorial_inclusion_check(const TrajectoryRecord& record,
                                          const EnvelopeFn& p, double eps) {
  return inclusion_check_impl(record, p, eps, /*cone_only=*/true);
}

InclusionReport lil_envelope_check(const TrajectoryRecord& record,
                                   double gamma) {
  if (!record.wichura_ok)
    throw std::invalid_argument(
        "LIL envelopes need the second-moment condition");
  InclusionReport rep;
  rep.ts = record.ts;
  const int d = record.d;
  const double sd = std::sqrt(static_cast<double>(d));
  const auto phi = EnvelopeFn::phi();
  for (std::size_t ti = 0; ti < record.ts.size(); ++ti) {
    const double t = record.ts[ti];
    const double c = gamma * record.sigma * phi(t);
    bool sub = true, sup = true;
    for (std::size_t i = 0; i < record.directions.size(); ++i) {
      const double r = record.radials(static_cast<Eigen::Index>(ti),
                                      static_cast<Eigen::Index>(i));
      const double branch = record.in_cone[i] ? 1.0 : sd;
      const double thr =
          h_threshold(1.0 / record.mu + c * branch, record.dir_prods[i], d);
      // M subset H_K(c) needs r >= thr; M superset needs r <= thr.
      if (r < thr - record.radial_slack) sub = false;
      if (r > thr + record.radial_slack) sup = false;
    }
    rep.subset_ok.push_back(sub);
    rep.superset_ok.push_back(sup);
    if (gamma < 0 ? !sub : !sup) rep.last_violation_t = t;
  }
  return rep;
}

MetricLilReport metric_lil_stats(const TrajectoryRecord& record) {
  MetricLilReport rep;
  rep.const_h = record.lil_const_h;
  rep.const_tri = record.lil_const_tri;
  for (const auto& row : record.rows) {
    rep.sup_ratio_h = std::max(rep.sup_ratio_h, row.ratio_h);
    if (!std::isnan(row.ratio_tri))
      rep.sup_ratio_tri = std::max(rep.sup_ratio_tri, row.ratio_tri);
  }
  return rep;
}

LiminfReport liminf_stats(const TrajectoryRecord& record) {
  LiminfReport rep;
  rep.ts = record.ts;
  for (const auto& row : record.rows) {
    rep.running_min_h.push_back(row.running_min_h);
    rep.running_min_tri.push_back(row.running_min_tri);
  }
  if (!record.rows.empty()) {
    rep.final_min_h = record.rows.back().running_min_h;
    rep.final_min_tri = record.rows.back().running_min_tri;
  }
  return rep;
}

double LiminfReport::running_min_h_at(double t) const {
  double best = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (ts[i] <= t * (1 + 1e-12)) best = running_min_h[i];
  return best;
}

}  // namespace renewal
