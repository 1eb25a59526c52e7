#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "renewal/field_sampler.hpp"
#include "renewal/limit_set.hpp"
#include "renewal/set_distance.hpp"

using namespace renewal;

namespace {
constexpr double kPi = std::numbers::pi;

Vec pt(std::initializer_list<double> v) {
  Vec x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (auto c : v) x[i++] = c;
  return x;
}
}  // namespace

TEST_CASE("h_radial closed form") {
  const LimitSet h(1.0, 0.0);
  CHECK(h.radial(Vec(pt({1.0, 1.0}) / std::sqrt(2.0))) ==
        doctest::Approx(std::sqrt(2.0)));
  CHECK(LimitSet(1.0, 0.0).radial(pt({1.0})) == doctest::Approx(1.0));
  SUBCASE("scaling: radial at cu is radial at u over c") {
    const Vec u = pt({0.4, 0.9});
    CHECK(h.radial(Vec(3.0 * u)) == doctest::Approx(h.radial(u) / 3.0));
  }
  SUBCASE("degenerate level is rejected") {
    CHECK_THROWS_AS(LimitSet(1.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(LimitSet(1.0, -2.0), std::domain_error);
    CHECK_THROWS_AS(h.radial(pt({1.0, 0.0})), std::domain_error);
  }
}

TEST_CASE("closed-form Hausdorff between H-levels") {
  CHECK(hausdorff_closed(0.3, 0.3, 1.0, 2) == 0.0);
  CHECK(hausdorff_closed(0.0, 1.0, 1.0, 2) ==
        doctest::Approx(2.0 - std::sqrt(2.0)));
  CHECK(hausdorff_closed(0.0, 0.5, 1.0, 1) == doctest::Approx(0.5));
  CHECK_THROWS_AS(hausdorff_closed(1.0, 0.0, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(hausdorff_closed(-2.0, 0.0, 1.0, 2), std::invalid_argument);
}

TEST_CASE("closed-form symmetric difference over cones") {
  const auto cone = ConeSpec::angle_interval(kPi / 6, kPi / 3);
  CHECK(symdiff_closed(cone, 0.1, 0.1, 1.0) == 0.0);
  CHECK(symdiff_closed(cone, 0.0, 0.2, 1.0) ==
        doctest::Approx(0.109861).epsilon(1e-5));
  const auto wide = ConeSpec::angle_interval(kPi / 8, 3 * kPi / 8);
  CHECK(symdiff_closed(wide, 0.0, 1.0, 1.0) ==
        doctest::Approx(0.881374).epsilon(1e-5));
}

TEST_CASE("L_K estimates") {
  SUBCASE("degenerate interval") {
    const auto r =
        l_k(ConeSpec::angle_interval(kPi / 4, kPi / 4), LkMethod::Analytic2d);
    CHECK(r.value == doctest::Approx(0.0));
  }
  SUBCASE("analytic values") {
    CHECK(l_k_analytic(kPi / 6, kPi / 3) ==
          doctest::Approx(0.5 * std::log(3.0)));
    CHECK(l_k_analytic(kPi / 8, 3 * kPi / 8) ==
          doctest::Approx(0.5 * std::log(3.0 + 2.0 * std::sqrt(2.0))));
  }
  SUBCASE("quadrature agrees with analytic to 1e-6") {
    const auto a = l_k(ConeSpec::angle_interval(kPi / 6, kPi / 3),
                       LkMethod::Quadrature);
    CHECK(a.converged);
    CHECK(std::abs(a.value - 0.549306) <= 1e-6);
    const auto b = l_k(ConeSpec::angle_interval(kPi / 8, 3 * kPi / 8),
                       LkMethod::Quadrature);
    CHECK(std::abs(b.value - 0.881374) <= 1e-6);
  }
  SUBCASE("aperture cones in d = 2 go through quadrature") {
    // aperture theta corresponds to angles [atan theta, atan 1/theta]
    const auto q = l_k(ConeSpec::aperture(2, 0.5), LkMethod::Quadrature);
    CHECK(q.value ==
          doctest::Approx(l_k_analytic(std::atan(0.5), std::atan(2.0))));
  }
  SUBCASE("d = 3: quadrature and monte carlo agree within bounds") {
    const auto cone = ConeSpec::aperture(3, 0.5);
    const auto q = l_k(cone, LkMethod::Quadrature, 1 << 22, 1e-5);
    const auto mc = l_k(cone, LkMethod::MonteCarlo, 1 << 19);
    CHECK(std::abs(q.value - mc.value) <=
          3.0 * (q.error_bound + mc.error_bound) + 1e-3);
  }
  SUBCASE("d = 2 monte carlo brackets the analytic value") {
    const auto cone = ConeSpec::angle_interval(kPi / 6, kPi / 3);
    const auto mc = l_k(cone, LkMethod::MonteCarlo, 1 << 17);
    CHECK(std::abs(mc.value - 0.5 * std::log(3.0)) <=
          mc.error_bound + 2e-3);
  }
  SUBCASE("monotone in the cone") {
    const auto narrow = l_k(ConeSpec::angle_interval(0.5, 0.9),
                            LkMethod::Analytic2d);
    const auto wide = l_k(ConeSpec::angle_interval(0.4, 1.1),
                          LkMethod::Analytic2d);
    CHECK(narrow.value <= wide.value);
    const auto n3 = l_k(ConeSpec::aperture(3, 0.7), LkMethod::Quadrature);
    const auto w3 = l_k(ConeSpec::aperture(3, 0.4), LkMethod::Quadrature);
    CHECK(n3.value <= w3.value);
  }
  SUBCASE("d = 1 point mass") {
    CHECK(l_k(ConeSpec::aperture(1, 1.0), LkMethod::Quadrature).value == 1.0);
  }
  SUBCASE("exhausted budget is flagged as an accuracy warning") {
    const auto r = l_k(ConeSpec::aperture(3, 0.5), LkMethod::Quadrature,
                       /*budget=*/64, /*tol=*/1e-15);
    CHECK_FALSE(r.converged);
    CHECK(r.error_bound > 0.0);
  }
}

TEST_CASE("hausdorff witness on the window boundary raises a warning") {
  SetSample a, b;
  Vec edge(2), far_pt(2);
  edge << 1.5, 1.5;  // exactly on the window boundary
  far_pt << 0.1, 0.1;
  a.boundary = {edge};
  a.contains = [](const Vec&) { return false; };
  b.boundary = {far_pt};
  b.contains = [](const Vec&) { return false; };
  const auto est = hausdorff_estimate(a, b, 1.5);
  CHECK(est.truncation_warning);
  CHECK(est.value == doctest::Approx(std::sqrt(2.0) * 1.4));
}

TEST_CASE("distance to the limit set") {
  const LimitSet h(1.0, 0.0);
  CHECK(dist_to_limit(pt({2.0, 3.0}), h) == 0.0);
  CHECK(dist_to_limit(pt({0.5, 2.0}), h) == doctest::Approx(0.0));  // boundary
  CHECK(dist_to_limit(pt({0.5, 0.5}), h) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
  SUBCASE("projection sits on the boundary surface") {
    const auto pr = project_to_limit(pt({0.2, 1.4}), h);
    CHECK(pr.newton_converged);
    CHECK(coord_prod(pr.point) == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("Newton matches a dense boundary search on random exterior points") {
    std::uint64_t hbits = 123;
    const int n_dirs = 20000;
    std::vector<Vec> boundary;
    for (int i = 0; i < n_dirs; ++i) {
      const double phi = (i + 0.5) * (kPi / 2) / n_dirs;
      Vec u(2);
      u << std::cos(phi), std::sin(phi);
      boundary.push_back(h.radial(u) * u);
    }
    for (int rep = 0; rep < 100; ++rep) {
      Vec x(2);
      hbits = mix64(hbits + kGolden);
      x[0] = 3.0 * uniform01(hbits);
      hbits = mix64(hbits + kGolden);
      x[1] = uniform01(hbits) * std::min(0.95 / std::max(x[0], 0.05), 3.0);
      if (h.contains(x)) continue;
      double best = 1e300;
      for (const auto& b : boundary)
        best = std::min(best, std::sqrt(((b - x) * (b - x)).sum()));
      CHECK(dist_to_limit(x, h) == doctest::Approx(best).epsilon(1e-4));
    }
  }
  SUBCASE("d = 3 projection") {
    const LimitSet h3(2.0, 0.0);  // level 0.5
    const auto pr = project_to_limit(pt({0.1, 0.2, 0.3}), h3);
    CHECK(pr.newton_converged);
    CHECK(coord_prod(pr.point) == doctest::Approx(0.5).epsilon(1e-10));
    // stationarity: y_i (y_i - x_i) equal across coordinates
    const Vec nu = pr.point * (pr.point - pt({0.1, 0.2, 0.3}));
    CHECK(nu[0] == doctest::Approx(nu[1]).epsilon(1e-8));
    CHECK(nu[1] == doctest::Approx(nu[2]).epsilon(1e-8));
  }
}

TEST_CASE("limit sets are monotone in c") {
  std::uint64_t h = 7;
  const LimitSet outer(1.0, 0.1), inner(1.0, 0.6);
  for (int rep = 0; rep < 500; ++rep) {
    Vec x(2);
    h = mix64(h + kGolden);
    x[0] = 3.0 * uniform01(h);
    h = mix64(h + kGolden);
    x[1] = 3.0 * uniform01(h);
    if (inner.contains(x)) CHECK(outer.contains(x));
  }
}

TEST_CASE("cone limit sets use the sqrt(d) branch outside the cone") {
  const ConeLimitSet cls(ConeSpec::aperture(2, 0.9), 1.0, 0.1);
  CHECK(cls.contains(pt({1.05, 1.05})));   // in cone, |x| = 1.1025 >= 1.1
  CHECK_FALSE(cls.contains(pt({0.3, 3.7})));  // outside, 1.11 < 1 + 0.1 sqrt 2
  SUBCASE("c = 0 reduces to H everywhere") {
    const ConeLimitSet zero(ConeSpec::aperture(2, 0.9), 1.0, 0.0);
    const LimitSet h(1.0, 0.0);
    std::uint64_t bits = 40;
    for (int rep = 0; rep < 300; ++rep) {
      Vec x(2);
      bits = mix64(bits + kGolden);
      x[0] = 2.5 * uniform01(bits);
      bits = mix64(bits + kGolden);
      x[1] = 2.5 * uniform01(bits);
      CHECK(zero.contains(x) == h.contains(x));
    }
  }
  SUBCASE("radial thresholds match membership") {
    const Vec inside = pt({1.0, 1.0}) / std::sqrt(2.0);
    const Vec outside = pt({0.2, 0.98});
    CHECK(cls.radial(inside) ==
          doctest::Approx(std::pow(1.1 / coord_prod(inside), 0.5)));
    CHECK(cls.radial(Vec(outside / euclidean_norm(outside))) ==
          doctest::Approx(std::pow((1.0 + 0.1 * std::sqrt(2.0)) /
                                       coord_prod(outside / euclidean_norm(outside)),
                                   0.5)));
  }
}

TEST_CASE("invalid cones are rejected") {
  CHECK_THROWS_AS(ConeSpec::aperture(2, 0.0), InvalidConeError);
  CHECK_THROWS_AS(ConeSpec::angle_interval(0.0, 1.0), InvalidConeError);
  CHECK_THROWS_AS(ConeSpec::angle_interval(0.3, kPi / 2), InvalidConeError);
  CHECK_THROWS_AS(ConeSpec::angle_interval(1.0, 0.5), InvalidConeError);
}

TEST_CASE("hausdorff estimate from boundary clouds") {
  SUBCASE("identical clouds") {
    const auto net = direction_net_2d(0.05, kPi / 2 - 0.05, 500);
    const auto s = limit_set_sample(LimitSet(1.0, 0.0), net);
    CHECK(hausdorff_estimate(s, s, 6.0).value < 1e-12);
  }
  SUBCASE("H(0) vs H(1) reproduces the closed form within 1%") {
    const auto [a, b] = window_cone_2d(2.0, 6.0);
    const auto net = direction_net_2d(a, b, 10000);
    const auto s0 = limit_set_sample(LimitSet(1.0, 0.0), net);
    const auto s1 = limit_set_sample(LimitSet(1.0, 1.0), net);
    const auto est = hausdorff_estimate(s0, s1, 6.0);
    const double target = 2.0 - std::sqrt(2.0);
    CHECK(std::abs(est.value - target) / target < 0.01);
    // argmax near the diagonal, interior to the window
    CHECK_FALSE(est.truncation_warning);
    CHECK(est.witness[0] == doctest::Approx(est.witness[1]).epsilon(0.05));
  }
  SUBCASE("refining the net moves the estimate by less than the spacing") {
    const auto [a, b] = window_cone_2d(1.5, 6.0);
    const auto coarse_net = direction_net_2d(a, b, 2000);
    const auto fine_net = direction_net_2d(a, b, 4000);
    const auto s0c = limit_set_sample(LimitSet(1.0, 0.0), coarse_net);
    const auto s1c = limit_set_sample(LimitSet(1.0, 0.5), coarse_net);
    const auto s0f = limit_set_sample(LimitSet(1.0, 0.0), fine_net);
    const auto s1f = limit_set_sample(LimitSet(1.0, 0.5), fine_net);
    const double ec = hausdorff_estimate(s0c, s1c, 6.0).value;
    const double ef = hausdorff_estimate(s0f, s1f, 6.0).value;
    const double spacing = 6.0 * (b - a) / 2000;
    CHECK(std::abs(ef - ec) < spacing);
  }
  SUBCASE("converges to the closed form for random level pairs, d in 1..3") {
    struct Pair {
      double c1, c2;
    };
    const Pair pairs[] = {{0.0, 0.7}, {-0.3, 0.2}, {0.1, 0.9}, {0.2, 0.4},
                          {-0.5, -0.1}};
    for (int d = 1; d <= 3; ++d) {
      for (const auto& [c1, c2] : pairs) {
        const double target = hausdorff_closed(c1, c2, 1.0, d);
        const double W = default_window(1.0, std::max(std::abs(c1), std::abs(c2)), d);
        std::vector<Vec> net;
        if (d == 1) {
          net = {Vec::Ones(1)};
        } else if (d == 2) {
          const auto [wa, wb] = window_cone_2d(1.0 + std::abs(c2), W);
          net = direction_net_2d(wa, wb, 4000);
        } else {
          net = direction_net_3d(ConeSpec::aperture(3, 0.05), 4000);
        }
        const auto sa = limit_set_sample(LimitSet(1.0, c1), net);
        const auto sb = limit_set_sample(LimitSet(1.0, c2), net);
        const auto est = hausdorff_estimate(sa, sb, W);
        const double tol = d == 3 ? 0.05 : 0.01;
        CHECK(std::abs(est.value - target) <= tol * std::max(target, 0.05));
      }
    }
  }
}

TEST_CASE("symmetric-difference estimate by directional quadrature") {
  const auto cone = ConeSpec::angle_interval(kPi / 6, kPi / 3);
  const LimitSet h0(1.0, 0.0), h02(1.0, 0.2);
  auto r0 = [&](const Vec& u) { return h0.radial(u); };
  auto r02 = [&](const Vec& u) { return h02.radial(u); };
  SUBCASE("identical sets") {
    CHECK(symdiff_estimate(r0, r0, cone).value == 0.0);
  }
  SUBCASE("H(0) vs H(0.2) matches L_K (c2 - c1)") {
    const auto est = symdiff_estimate(r0, r02, cone, 256);
    CHECK(est.value == doctest::Approx(0.109861).epsilon(1e-4));
  }
  SUBCASE("doubling the nodes stays within the error bound") {
    const auto est = symdiff_estimate(r0, r02, cone, 64);
    const auto est2 = symdiff_estimate(r0, r02, cone, 128);
    CHECK(std::abs(est2.value - est.value) <= est.error_bound + 1e-12);
  }
  SUBCASE("matches the closed form on 5 random level pairs") {
    const double lk = l_k_analytic(kPi / 6, kPi / 3);
    const double pairs[][2] = {
        {0.0, 0.3}, {-0.2, 0.1}, {0.05, 0.6}, {0.4, 0.8}, {-0.4, -0.2}};
    for (const auto& p : pairs) {
      const LimitSet a(1.0, p[0]), b(1.0, p[1]);
      const auto est = symdiff_estimate(
          [&](const Vec& u) { return a.radial(u); },
          [&](const Vec& u) { return b.radial(u); }, cone, 512);
      CHECK(est.value ==
            doctest::Approx(lk * (p[1] - p[0])).epsilon(1e-6));
    }
  }
  SUBCASE("d = 3 two numeric routes agree") {
    const auto cone3 = ConeSpec::aperture(3, 0.5);
    const LimitSet a(1.0, 0.0), b(1.0, 0.3);
    const auto est = symdiff_estimate(
        [&](const Vec& u) { return a.radial(u); },
        [&](const Vec& u) { return b.radial(u); }, cone3, 1 << 16);
    const auto lk3 = l_k(cone3, LkMethod::Quadrature, 1 << 22, 1e-6);
    CHECK(std::abs(est.value - lk3.value * 0.3) <=
          3.0 * (est.error_bound + 0.3 * lk3.error_bound) + 2e-3);
  }
}
