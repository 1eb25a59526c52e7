#include "renewal/envelope.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace renewal {

double log_ext(double c) {
  if (c < 0) throw std::domain_error("log_ext: negative argument");
  return c < std::exp(1.0) ? 1.0 : std::log(c);
}

double loglog_ext(double c) {
  if (c < 0) throw std::domain_error("loglog_ext: negative argument");
  return c < kEE ? 1.0 : std::log(std::log(c));
}

EnvelopeFn::EnvelopeFn(EnvelopeKind kind, double beta,
                       std::function<double(double)> fn, std::string name)
    : kind_(kind), beta_(beta), fn_(std::move(fn)), name_(std::move(name)) {}

EnvelopeFn EnvelopeFn::power(double beta) {
  if (!(beta >= 1.0 && beta < 2.0))
    throw std::invalid_argument("power envelope needs beta in [1,2)");
  return {EnvelopeKind::Power, beta, {}, "t^(1/beta)"};
}

EnvelopeFn EnvelopeFn::phi() { return {EnvelopeKind::Phi, 0, {}, "phi"}; }
EnvelopeFn EnvelopeFn::chi() { return {EnvelopeKind::Chi, 0, {}, "chi"}; }
EnvelopeFn EnvelopeFn::lower_q() {
  return {EnvelopeKind::LowerQ, 0, {}, "q"};
}

EnvelopeFn EnvelopeFn::custom(std::function<double(double)> fn,
                              std::string name) {
  EnvelopeFn env(EnvelopeKind::Custom, 0, std::move(fn), std::move(name));
  // Monotonicity contract probe: p nondecreasing, p(t)/t nonincreasing,
  // checked from t = 8 upward on a geometric grid.
  double prev = env(8.0), prev_ratio = prev / 8.0;
  for (double t = 8.0 * 1.25; t < 1e13; t *= 1.25) {
    const double v = env(t);
    if (v < prev * (1.0 - 1e-12))
      throw std::invalid_argument("custom envelope is not nondecreasing");
    if (v / t > prev_ratio * (1.0 + 1e-12))
      throw std::invalid_argument("custom envelope: p(t)/t is not nonincreasing");
    prev = v;
    prev_ratio = v / t;
  }
  return env;
}

double EnvelopeFn::operator()(double t) const {
  switch (kind_) {
    case EnvelopeKind::Power:
      if (t < 0) throw std::domain_error("envelope: negative argument");
      return std::pow(t, 1.0 / beta_);
    case EnvelopeKind::Phi:
      if (!(t > 0)) throw std::domain_error("phi requires t > 0");
      return std::sqrt(2.0 * loglog_ext(t) / t);
    case EnvelopeKind::Chi:
      if (t < 0) throw std::domain_error("envelope: negative argument");
      return std::sqrt(2.0 * t * loglog_ext(t));
    case EnvelopeKind::LowerQ:
      if (t < 0) throw std::domain_error("envelope: negative argument");
      return std::sqrt(2.0 * t * (loglog_ext(t) + 1.0));
    case EnvelopeKind::Custom:
      if (t < 0) throw std::domain_error("envelope: negative argument");
      return fn_(t);
  }
  return 0.0;
}

}  // namespace renewal
