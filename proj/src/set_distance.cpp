#include "renewal/set_distance.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "renewal/renewal_set.hpp"

namespace renewal {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kGoldenAngle = 2.399963229728653;  // pi (3 - sqrt 5)
}  // namespace

std::vector<Vec> direction_net_2d(double theta1, double theta2, int count) {
  if (!(theta1 > 0 && theta2 < kPi / 2 && theta1 <= theta2))
    throw std::invalid_argument("direction net needs angles inside (0, pi/2)");
  if (count < 1) throw std::invalid_argument("need at least one direction");
  std::vector<Vec> net;
  net.reserve(count);
  const double h = (theta2 - theta1) / count;
  for (int i = 0; i < count; ++i) {
    const double phi = theta1 + (i + 0.5) * h;
    Vec u(2);
    u << std::cos(phi), std::sin(phi);
    net.push_back(u);
  }
  return net;
}

std::vector<Vec> direction_net_3d(const ConeSpec& cone, int count) {
  if (cone.dimension() != 3)
    throw std::invalid_argument("3d net needs a 3d cone");
  std::vector<Vec> net;
  // Fibonacci spiral over the sphere, keeping cone directions; the sample
  // budget doubles until enough survive the filter.
  for (int budget = 8 * count; net.size() < static_cast<std::size_t>(count);
       budget *= 2) {
    net.clear();
    for (int i = 0; i < budget && net.size() < static_cast<std::size_t>(count);
         ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / budget;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = i * kGoldenAngle;
      Vec u(3);
      u << r * std::cos(phi), r * std::sin(phi), z;
      if ((u > 0).all() && cone.contains(u)) net.push_back(u);
    }
    if (budget > (1 << 26))
      throw std::runtime_error("could not populate 3d direction net");
  }
  return net;
}

std::vector<Vec> direction_net(int d, int count,
                               const std::optional<ConeSpec>& cone) {
  if (d == 1) {
    return {Vec::Ones(1)};
  }
  if (d == 2) {
    double a = 1e-3, b = kPi / 2 - 1e-3;
    if (cone) {
      const auto [ca, cb] = cone->angle_range_2d();
      a = ca;
      b = cb;
    }
    return direction_net_2d(a, b, count);
  }
  if (d == 3) {
    const ConeSpec k = cone ? *cone : ConeSpec::aperture(3, 1e-3);
    return direction_net_3d(k, count);
  }
  throw std::invalid_argument("direction nets support d <= 3");
}

std::pair<double, double> window_cone_2d(double level, double window) {
  if (!(level > 0 && window > 0))
    throw std::invalid_argument("level and window must be positive");
  // Boundary point along angle phi has x-coordinate sqrt(level cot phi);
  // it stays within the window iff cot phi <= W^2 / level.
  const double a = std::atan(level / (window * window));
  return {a, kPi / 2 - a};
}

double default_window(double mu, double c_max, int d) {
  return 4.0 * std::pow(1.0 / mu + std::abs(c_max), 1.0 / d) *
         std::sqrt(static_cast<double>(d));
}

SetSample limit_set_sample(const LimitSet& ls,
                           const std::vector<Vec>& directions) {
  SetSample s;
  s.boundary.reserve(directions.size());
  for (const auto& u : directions) s.boundary.push_back(ls.radial(u) * u);
  s.contains = [ls](const Vec& x) { return ls.contains(x); };
  s.exact_distance = [ls](const Vec& x) { return dist_to_limit(x, ls); };
  return s;
}

namespace {

double dist_to_cloud(const Vec& x, const std::vector<Vec>& cloud) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : cloud) {
    const double d2 = ((p - x) * (p - x)).sum();
    if (d2 < best) best = d2;
  }
  return std::sqrt(best);
}

double dist_to_segment(const Vec& x, const Vec& a, const Vec& b) {
  const Vec ab = b - a;
  const double len2 = (ab * ab).sum();
  double s = len2 > 0 ? ((x - a) * ab).sum() / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  const Vec p = a + s * ab;
  return std::sqrt(((p - x) * (p - x)).sum());
}

// Distance to the boundary polyline through consecutive cloud points (d = 2
// clouds are angle-ordered); the segments bridge the widening gaps between
// samples near the axes, where vertex distances overshoot badly.
double dist_to_boundary(const Vec& x, const std::vector<Vec>& cloud) {
  if (x.size() != 2 || cloud.size() < 2) return dist_to_cloud(x, cloud);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < cloud.size(); ++i)
    best = std::min(best, dist_to_segment(x, cloud[i], cloud[i + 1]));
  return best;
}

void one_sided(const SetSample& from, const SetSample& to, double window,
               HausdorffEstimate& est) {
  for (const auto& p : from.boundary) {
    if ((p > window).any()) continue;  // outside the comparison window
    if (to.contains(p)) continue;
    const double d = to.exact_distance ? to.exact_distance(p)
                                       : dist_to_boundary(p, to.boundary);
    if (d > est.value) {
      est.value = d;
      est.witness = p;
    }
  }
}

}  // namespace

HausdorffEstimate hausdorff_estimate(const SetSample& a, const SetSample& b,
                                     double window) {
  if (a.boundary.empty() || b.boundary.empty())
    throw std::invalid_argument("hausdorff estimate needs nonempty clouds");
  if (!(window > 0)) throw std::invalid_argument("window must be positive");
  HausdorffEstimate est;
  est.witness = Vec::Zero(a.boundary.front().size());
  one_sided(a, b, window, est);
  one_sided(b, a, window, est);
  if (est.value > 0 && (est.witness >= window * (1.0 - 1e-6)).any())
    est.truncation_warning = true;
  return est;
}

SymdiffEstimate symdiff_estimate(const std::function<double(const Vec&)>& r_a,
                                 const std::function<double(const Vec&)>& r_b,
                                 const ConeSpec& cone, int nodes) {
  const int d = cone.dimension();
  auto integral = [&](int n) {
    if (d == 1) {
      const Vec u = Vec::Ones(1);
      return std::abs(r_a(u) - r_b(u));
    }
    if (d == 2) {
      const auto [a, b] = cone.angle_range_2d();
      const auto net = direction_net_2d(a, b, n);
      const double w = (b - a) / n;
      double total = 0;
      for (const auto& u : net)
        total += std::abs(std::pow(r_a(u), d) - std::pow(r_b(u), d)) * w;
      return total / d;
    }
    // d = 3: midpoint rule over the spherical-angle box with the cone
    // indicator, same parametrization as the L_K quadrature.
    const int m = std::max(8, static_cast<int>(std::sqrt(n)));
    const double h = (kPi / 2) / m;
    double total = 0;
    Vec u(3);
    for (int i = 0; i < m; ++i) {
      const double th = (i + 0.5) * h;
      const double sth = std::sin(th), cth = std::cos(th);
      for (int j = 0; j < m; ++j) {
        const double ph = (j + 0.5) * h;
        u[0] = sth * std::cos(ph);
        u[1] = sth * std::sin(ph);
        u[2] = cth;
        if (!cone.contains(u)) continue;
        total +=
            std::abs(std::pow(r_a(u), 3) - std::pow(r_b(u), 3)) * sth * h * h;
      }
    }
    return total / 3.0;
  };
  SymdiffEstimate est;
  const double coarse = integral(std::max(2, nodes / 2));
  est.value = integral(nodes);
  est.error_bound = std::abs(est.value - coarse);
  return est;
}

double symdiff_from_radials(const std::vector<double>& r_a,
                            const std::vector<double>& r_b,
                            const std::vector<double>& weights, int d) {
  if (r_a.size() != r_b.size() || r_a.size() != weights.size())
    throw std::invalid_argument("radial/weight arrays must align");
  double total = 0;
  for (std::size_t i = 0; i < r_a.size(); ++i)
    total += std::abs(std::pow(r_a[i], d) - std::pow(r_b[i], d)) * weights[i];
  return total / d;
}

SymdiffEstimate symdiff_estimate(const RenewalSetView& view,
                                 const LimitSet& ls, const ConeSpec& cone,
                                 int nodes, double radial_tol) {
  return symdiff_estimate(
      [&](const Vec& u) { return view.radial(u, radial_tol).value; },
      [&](const Vec& u) { return ls.radial(u); }, cone, nodes);
}

}  // namespace renewal
