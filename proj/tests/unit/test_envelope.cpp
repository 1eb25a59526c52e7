#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "renewal/envelope.hpp"

using namespace renewal;

TEST_CASE("extended logs follow the near-zero convention") {
  CHECK(log_ext(1.0) == 1.0);
  CHECK(log_ext(0.0) == 1.0);
  CHECK(log_ext(2.7) == 1.0);
  CHECK(log_ext(100.0) == doctest::Approx(std::log(100.0)));
  CHECK(loglog_ext(10.0) == 1.0);  // 10 < e^e
  CHECK(loglog_ext(100.0) == doctest::Approx(1.52718).epsilon(1e-5));
  CHECK_THROWS_AS(log_ext(-0.1), std::domain_error);
  CHECK_THROWS_AS(loglog_ext(-0.1), std::domain_error);
}

TEST_CASE("extended logs are continuous at the convention boundaries") {
  const double e = std::exp(1.0);
  CHECK(log_ext(e) == doctest::Approx(1.0));
  CHECK(log_ext(std::nextafter(e, 0.0)) == 1.0);
  CHECK(loglog_ext(kEE) == doctest::Approx(1.0));
  CHECK(loglog_ext(std::nextafter(kEE, 0.0)) == 1.0);
}

TEST_CASE("extended logs are nondecreasing and dominate min(1, log)") {
  double prev_l = 0, prev_ll = 0;
  for (double t = 0; t < 100; t += 0.37) {
    const double l = log_ext(t), ll = loglog_ext(t);
    CHECK(l >= prev_l);
    CHECK(ll >= prev_ll);
    if (t > 1.0) CHECK(l >= std::min(1.0, std::log(t)));
    prev_l = l;
    prev_ll = ll;
  }
}

TEST_CASE("envelope values pinned by the conventions") {
  const auto chi = EnvelopeFn::chi();
  CHECK(chi(10.0) == doctest::Approx(std::sqrt(20.0)));  // loglog = 1 region
  CHECK(chi(kEE) == doctest::Approx(std::sqrt(2.0 * kEE)));
  CHECK(chi(kEE) == doctest::Approx(5.505318).epsilon(1e-5));

  const auto phi = EnvelopeFn::phi();
  CHECK(phi(100.0) == doctest::Approx(0.174767).epsilon(1e-4));
  CHECK(chi(100.0) == doctest::Approx(100.0 * phi(100.0)));

  const auto q = EnvelopeFn::lower_q();
  CHECK(q(10.0) == doctest::Approx(std::sqrt(2.0 * 10.0 * 2.0)));
  // q dominates chi everywhere (diagnostic inequality).
  for (double t = 1; t < 1e8; t *= 7) CHECK(q(t) > chi(t));
}

TEST_CASE("chi is concave beyond e^e") {
  const auto chi = EnvelopeFn::chi();
  for (double t = kEE; t < 1e9; t *= 1.7) {
    const double mid = chi(1.5 * t);
    CHECK(mid >= 0.5 * (chi(t) + chi(2.0 * t)) - 1e-12);
  }
}

TEST_CASE("power envelope enforces beta in [1,2)") {
  CHECK(EnvelopeFn::power(1.5)(8.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(EnvelopeFn::power(2.0), std::invalid_argument);
  CHECK_THROWS_AS(EnvelopeFn::power(0.9), std::invalid_argument);
}

TEST_CASE("custom envelopes are validated on a probe grid") {
  CHECK_NOTHROW(EnvelopeFn::custom(
      [](double t) { return std::sqrt(t); }, "sqrt"));
  CHECK_THROWS_AS(EnvelopeFn::custom([](double t) { return 1.0 / (1.0 + t); },
                                     "decreasing"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      EnvelopeFn::custom([](double t) { return t * t; }, "superlinear"),
      std::invalid_argument);
}

TEST_CASE("phi requires positive argument") {
  CHECK_THROWS_AS(EnvelopeFn::phi()(0.0), std::domain_error);
}
