#include <doctest.h>

#include <cmath>
#include <vector>

#include "renewal/chentsov.hpp"
#include "renewal/stats.hpp"

using namespace renewal;

namespace {
Vec pt(std::initializer_list<double> v) {
  Vec x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (auto c : v) x[i++] = c;
  return x;
}
}  // namespace

TEST_CASE("covariance target is the coordinatewise-minimum product") {
  const Vec x = pt({1.0, 2.0}), y = pt({2.0, 1.0});
  CHECK(coord_prod(Vec(x.min(y))) == doctest::Approx(1.0));
}

TEST_CASE("the field vanishes on coordinate faces") {
  const ChentsovPath path(2, 16, 99);
  CHECK(path.value(pt({0.0, 0.7})) == 0.0);
  CHECK(path.value(pt({0.4, 0.0})) == 0.0);
  Lattice k(2);
  k << 0, 9;
  CHECK(path.at_grid(k) == 0.0);
}

TEST_CASE("same seed reproduces the path; domain is enforced") {
  const ChentsovPath a(2, 8, 7), b(2, 8, 7), c(2, 8, 8);
  const Vec x = pt({0.62, 0.31});
  CHECK(a.value(x) == b.value(x));
  CHECK(a.value(x) != c.value(x));
  CHECK_THROWS_AS(a.value(pt({1.2, 0.5})), std::domain_error);
}

TEST_CASE("sample covariance tracks |x ^ y| (small-budget sanity)") {
  const int paths = 600;
  const Vec x = pt({1.0, 1.0}), y = pt({0.5, 0.5});
  double sxx = 0, sxy = 0;
  for (int p = 0; p < paths; ++p) {
    const ChentsovPath path(2, 8, derive_seed(1234, p));
    const double zx = path.value(x), zy = path.value(y);
    sxx += zx * zx;
    sxy += zx * zy;
  }
  CHECK(sxx / paths == doctest::Approx(1.0).epsilon(0.2));
  CHECK(sxy / paths == doctest::Approx(0.25).epsilon(0.25));
}

TEST_CASE("d = 1 grid variance matches Brownian scaling") {
  const int paths = 800;
  double s1 = 0, shalf = 0;
  for (int p = 0; p < paths; ++p) {
    const ChentsovPath path(1, 16, derive_seed(555, p));
    const double z1 = path.value(pt({1.0}));
    const double zh = path.value(pt({0.5}));
    s1 += z1 * z1;
    shalf += zh * zh;
  }
  CHECK(s1 / paths == doctest::Approx(1.0).epsilon(0.2));
  CHECK(shalf / paths == doctest::Approx(0.5).epsilon(0.2));
}

TEST_CASE("zeta extrapolation") {
  const ChentsovPath path(2, 32, 21, 4);
  SUBCASE("unit-product directions evaluate the field directly") {
    const Vec u = pt({1.0, 1.0});
    CHECK(zeta_extrapolate(path, u) == doctest::Approx(path.value(u)));
    const Vec v = pt({2.0, 0.5});
    CHECK(zeta_extrapolate(path, v) == doctest::Approx(path.value(v)));
  }
  SUBCASE("self-similarity holds exactly per path") {
    std::uint64_t h = 5;
    for (int rep = 0; rep < 100; ++rep) {
      h = mix64(h + kGolden);
      const double s = 0.3 + 3.0 * uniform01(h);  // ratio within the grid
      h = mix64(h + kGolden);
      const double c = 0.25 + 4.0 * uniform01(h);
      const Vec u = c * pt({s, 1.0 / s});
      const double z1 = zeta_extrapolate(path, u);
      const double z2 = zeta_extrapolate(path, Vec(2.0 * u));
      CHECK(std::abs(z2 - std::pow(2.0, -2.0) * z1) <= 1e-12 * (1 + std::abs(z1)));
    }
  }
  SUBCASE("targets outside the grid raise a domain error") {
    CHECK_THROWS_AS(zeta_extrapolate(path, pt({8.0, 0.1 / 8.0})),
                    std::domain_error);
  }
}

TEST_CASE("zeta covariance at unit-product pairs approximates |u ^ v|") {
  // u, v on the |.| = 1 surface within the extended grid: E zeta_u zeta_v
  // = |u ^ v|.
  const int paths = 600;
  const Vec u = pt({2.0, 0.5}), v = pt({0.5, 2.0});
  double acc = 0;
  for (int p = 0; p < paths; ++p) {
    const ChentsovPath path(2, 16, derive_seed(777, p), 2);
    acc += zeta_extrapolate(path, u) * zeta_extrapolate(path, v);
  }
  const double target = coord_prod(Vec(u.min(v)));  // 0.25
  CHECK(acc / paths == doctest::Approx(target).epsilon(0.35));
}
