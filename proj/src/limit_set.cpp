#include "renewal/limit_set.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "renewal/field_sampler.hpp"

namespace renewal {

namespace {
constexpr double kPi = std::numbers::pi;

void check_open_orthant(const Vec& u) {
  if (!(u > 0).all())
    throw std::domain_error(
        "direction must lie in the open orthant (the ray never meets the set "
        "otherwise)");
}
}  // namespace

LimitSet::LimitSet(double mu, double c) : mu_(mu), c_(c) {
  if (!(mu > 0)) throw std::invalid_argument("mu must be > 0");
  if (!(1.0 / mu + c > 0))
    throw std::domain_error("1/mu + c must be > 0 (degenerate limit set)");
}

bool LimitSet::contains(const Vec& x) const {
  if ((x < 0).any()) return false;
  return coord_prod(x) >= level();
}

double LimitSet::radial(const Vec& u) const {
  check_open_orthant(u);
  const int d = static_cast<int>(u.size());
  return std::pow(level() / coord_prod(u), 1.0 / d);
}

double h_radial(const LimitSet& ls, const Vec& u) { return ls.radial(u); }

ConeLimitSet::ConeLimitSet(ConeSpec cone, double mu, double c)
    : cone_(std::move(cone)), mu_(mu), c_(c) {
  if (!(mu > 0)) throw std::invalid_argument("mu must be > 0");
}

double ConeLimitSet::level_outside() const {
  return 1.0 / mu_ + c_ * std::sqrt(static_cast<double>(cone_.dimension()));
}

bool ConeLimitSet::contains(const Vec& x) const {
  if ((x < 0).any()) return false;
  const double lvl = cone_.contains(x) ? level_inside() : level_outside();
  return coord_prod(x) >= lvl;  // vacuous when the level is <= 0
}

double ConeLimitSet::radial(const Vec& u) const {
  check_open_orthant(u);
  const int d = cone_.dimension();
  const double lvl = cone_.contains(u) ? level_inside() : level_outside();
  if (lvl <= 0) return 0.0;  // the whole ray belongs to the set
  return std::pow(lvl / coord_prod(u), 1.0 / d);
}

double hausdorff_closed(double c1, double c2, double mu, int d) {
  if (!(mu > 0)) throw std::invalid_argument("mu must be > 0");
  if (!(c1 > -1.0 / mu) || !(c1 <= c2))
    throw std::invalid_argument("need -1/mu < c1 <= c2");
  const double id = 1.0 / d;
  return std::sqrt(static_cast<double>(d)) *
         (std::pow(1.0 / mu + c2, id) - std::pow(1.0 / mu + c1, id));
}

double symdiff_closed(const ConeSpec& cone, double c1, double c2, double mu) {
  if (!(mu > 0)) throw std::invalid_argument("mu must be > 0");
  if (!(c1 > -1.0 / mu) || !(c1 <= c2))
    throw std::invalid_argument("need -1/mu < c1 <= c2");
  LkMethod method = (cone.dimension() == 2 &&
                     cone.kind() == ConeKind::AngleInterval)
                        ? LkMethod::Analytic2d
                        : LkMethod::Quadrature;
  return l_k(cone, method).value * (c2 - c1);
}

double l_k_analytic(double theta1, double theta2) {
  if (!(theta1 > 0 && theta2 < kPi / 2 && theta1 <= theta2))
    throw std::invalid_argument("angle interval must be inside (0, pi/2)");
  // integrand 1/(2 sin cos) has antiderivative (1/2) log tan.
  return 0.5 * std::log(std::tan(theta2) / std::tan(theta1));
}

namespace {

// Composite Gauss-Legendre (8 nodes per panel) for the smooth d = 2 case.
double gauss8(double a, double b, int panels, double (*f)(double)) {
  static const double xs[4] = {0.1834346424956498, 0.5255324099163290,
                               0.7966664774136267, 0.9602898564975363};
  static const double ws[4] = {0.3626837833783620, 0.3137066458778873,
                               0.2223810344533745, 0.1012285362903763};
  const double h = (b - a) / panels;
  double total = 0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h, half = 0.5 * h;
    for (int i = 0; i < 4; ++i) {
      total += ws[i] * half *
               (f(mid + half * xs[i]) + f(mid - half * xs[i]));
    }
  }
  return total;
}

double inv_prod_angle(double phi) {
  return 1.0 / (2.0 * std::sin(phi) * std::cos(phi));
}

LkResult lk_quadrature_2d(double a, double b, std::size_t budget, double tol) {
  LkResult r;
  int panels = 2;
  double prev = gauss8(a, b, panels, inv_prod_angle);
  for (;;) {
    panels *= 2;
    const double cur = gauss8(a, b, panels, inv_prod_angle);
    const double diff = std::abs(cur - prev);
    prev = cur;
    if (diff <= tol) {
      r.value = cur;
      r.error_bound = diff;
      return r;
    }
    if (static_cast<std::size_t>(panels) * 8 > budget) {
      r.value = cur;
      r.error_bound = diff;
      r.converged = false;
      return r;
    }
  }
}

// d = 3: midpoint rule over the (polar, azimuth) box covering the positive
// octant with the cone indicator; refined until successive estimates settle.
LkResult lk_quadrature_3d(const ConeSpec& cone, std::size_t budget,
                          double tol) {
  LkResult r;
  auto estimate = [&](int n) {
    const double hth = (kPi / 2) / n, hph = (kPi / 2) / n;
    double total = 0;
    Vec u(3);
    for (int i = 0; i < n; ++i) {
      const double th = (i + 0.5) * hth;
      const double sth = std::sin(th), cth = std::cos(th);
      for (int j = 0; j < n; ++j) {
        const double ph = (j + 0.5) * hph;
        u[0] = sth * std::cos(ph);
        u[1] = sth * std::sin(ph);
        u[2] = cth;
        if (!cone.contains(u)) continue;
        total += sth / (u[0] * u[1] * u[2]);
      }
    }
    return total * hth * hph / 3.0;
  };
  int n = 32;
  double prev = estimate(n);
  for (;;) {
    n *= 2;
    const double cur = estimate(n);
    const double diff = std::abs(cur - prev);
    prev = cur;
    if (diff <= tol) {
      r.value = cur;
      r.error_bound = diff;
      return r;
    }
    if (static_cast<std::size_t>(n) * n * 4 > budget) {
      r.value = cur;
      r.error_bound = diff;
      r.converged = false;
      return r;
    }
  }
}

LkResult lk_monte_carlo(const ConeSpec& cone, std::size_t budget,
                        std::uint64_t seed) {
  const int d = cone.dimension();
  // Uniform directions on S^{d-1} via normalized Gaussians; the integral is
  // |S^{d-1}| E[f(U) 1_K(U)] / d.
  const double sphere_area = d == 2 ? 2 * kPi : 4 * kPi;
  double sum = 0, sum2 = 0;
  Vec u(d);
  Lattice idx(1);
  std::size_t n = budget;
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      idx[0] = static_cast<std::int64_t>(i * d + j + 1);
      u[j] = standard_normal_at(seed, idx);
    }
    const double norm = euclidean_norm(u);
    if (norm == 0) continue;
    u /= norm;
    double f = 0;
    if ((u > 0).all() && cone.contains(u)) f = 1.0 / coord_prod(u);
    sum += f;
    sum2 += f * f;
  }
  const double mean = sum / static_cast<double>(n);
  const double var =
      (sum2 / static_cast<double>(n) - mean * mean) / static_cast<double>(n);
  LkResult r;
  r.value = sphere_area * mean / d;
  r.error_bound = 3.0 * sphere_area * std::sqrt(std::max(var, 0.0)) / d;
  return r;
}

}  // namespace

LkResult l_k(const ConeSpec& cone, LkMethod method, std::size_t budget,
             double tol, std::uint64_t mc_seed) {
  const int d = cone.dimension();
  if (d == 1) {
    // K cap S^0 = {1}; the integral is the point mass |1|^{-1} = 1.
    return {1.0, 0.0, true};
  }
  switch (method) {
    case LkMethod::Analytic2d: {
      if (d != 2 || cone.kind() != ConeKind::AngleInterval)
        throw std::invalid_argument(
            "analytic L_K exists only for d = 2 angle intervals");
      const auto [a, b] = cone.angles();
      return {l_k_analytic(a, b), 0.0, true};
    }
    case LkMethod::Quadrature: {
      if (d == 2) {
        const auto [a, b] = cone.angle_range_2d();
        return lk_quadrature_2d(a, b, budget, tol);
      }
      if (d == 3) return lk_quadrature_3d(cone, budget, tol);
      throw std::invalid_argument("L_K quadrature supports d <= 3");
    }
    case LkMethod::MonteCarlo:
      if (d > 3) throw std::invalid_argument("L_K monte carlo supports d <= 3");
      return lk_monte_carlo(cone, budget, mc_seed);
  }
  return {};
}

namespace {

// Positive root of y(y - x) = nu.
inline double lagrange_root(double x, double nu) {
  return 0.5 * (x + std::sqrt(x * x + 4.0 * nu));
}

}  // namespace

Projection project_to_limit(const Vec& x, const LimitSet& ls) {
  if ((x < 0).any())
    throw std::domain_error("distance queries require x >= 0");
  Projection pr;
  if (ls.contains(x)) {
    pr.point = x;
    return pr;
  }
  const int d = static_cast<int>(x.size());
  const double logL = std::log(ls.level());

  // Stationarity: y_i (y_i - x_i) = nu for all i on the surface |y| = level.
  // g(nu) = sum log y_i(nu) - log level is increasing with g(0) < 0.
  auto g = [&](double nu) {
    double s = 0;
    for (int i = 0; i < d; ++i) s += std::log(lagrange_root(x[i], nu));
    return s - logL;
  };

  double lo = 0.0;
  double hi = std::max(1.0, std::pow(ls.level(), 2.0 / d));
  int guard = 0;
  while (g(hi) < 0 && guard++ < 200) {
    lo = hi;
    hi *= 4.0;
  }

  bool converged = guard < 200;
  double nu = 0.5 * (lo + hi);
  if (converged) {
    for (int it = 0; it < 100; ++it) {
      const double val = g(nu);
      if (std::abs(val) < 1e-14) break;
      double deriv = 0;
      for (int i = 0; i < d; ++i) {
        const double y = lagrange_root(x[i], nu);
        deriv += 1.0 / (y * std::sqrt(x[i] * x[i] + 4.0 * nu));
      }
      if (val > 0)
        hi = nu;
      else
        lo = nu;
      double next = nu - val / deriv;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisect guard
      if (std::abs(next - nu) < 1e-15 * (1.0 + nu)) {
        nu = next;
        break;
      }
      nu = next;
      if (it == 99) converged = false;
    }
  }

  if (converged) {
    Vec y(d);
    for (int i = 0; i < d; ++i) y[i] = lagrange_root(x[i], nu);
    pr.point = y;
    pr.distance = std::sqrt(((y - x) * (y - x)).sum());
    pr.newton_converged = true;
    return pr;
  }

  // Dense ray/grid fallback over boundary directions; flagged.
  pr.newton_converged = false;
  double best = std::numeric_limits<double>::infinity();
  Vec best_point = x;
  const int n = 4096;
  if (d == 1) {
    best_point = Vec::Constant(1, ls.level());
    best = std::abs(ls.level() - x[0]);
  } else if (d == 2) {
    for (int i = 0; i < n; ++i) {
      const double phi = (i + 0.5) * (kPi / 2) / n;
      Vec u(2);
      u << std::cos(phi), std::sin(phi);
      const Vec p = ls.radial(u) * u;
      const double dist = std::sqrt(((p - x) * (p - x)).sum());
      if (dist < best) {
        best = dist;
        best_point = p;
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      const double th = std::acos(1.0 - (i + 0.5) / n);
      const double ph = std::fmod((i + 0.5) * 2.399963229728653, kPi / 2);
      Vec u(3);
      u << std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
          std::cos(th);
      if (!(u > 0).all()) continue;
      const Vec p = ls.radial(u) * u;
      const double dist = std::sqrt(((p - x) * (p - x)).sum());
      if (dist < best) {
        best = dist;
        best_point = p;
      }
    }
  }
  pr.point = best_point;
  pr.distance = best;
  return pr;
}

double dist_to_limit(const Vec& x, const LimitSet& ls) {
  return project_to_limit(x, ls).distance;
}

}  // namespace renewal
