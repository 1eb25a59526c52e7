#include <doctest.h>

#include <cmath>
#include <vector>

#include "renewal/stats.hpp"

using namespace renewal;

TEST_CASE("summary statistics") {
  const std::vector<double> xs = {1, 2, 3, 4};
  const auto s = summarize(xs);
  CHECK(s.n == 4);
  CHECK(s.min == 1);
  CHECK(s.max == 4);
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.variance == doctest::Approx(1.25));  // population denominator
}

TEST_CASE("normal cdf") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.96) == doctest::Approx(0.975).epsilon(1e-3));
  CHECK(normal_cdf(2.0, 2.0, 3.0) == doctest::Approx(0.5));
}

TEST_CASE("KS critical value matches the asymptotic formula") {
  // sqrt(-0.5 log(0.005)) = 1.6276
  CHECK(ks_critical_value(400, 0.01) == doctest::Approx(1.6276 / 20.0).epsilon(1e-3));
  CHECK(ks_critical_value(10000, 0.05) ==
        doctest::Approx(1.3581 / 100.0).epsilon(1e-3));
}

TEST_CASE("KS statistic of an equidistributed sample is small") {
  std::vector<double> xs;
  const int n = 1000;
  for (int i = 0; i < n; ++i) xs.push_back((i + 0.5) / n);
  const double d = ks_statistic(xs, [](double x) { return x; });
  CHECK(d <= 0.5 / n + 1e-12);
}

TEST_CASE("correlation of a sequence with itself is 1") {
  const std::vector<double> xs = {0.3, 1.7, -2.0, 5.5, 0.0};
  CHECK(pearson_correlation(xs, xs) == doctest::Approx(1.0));
}
