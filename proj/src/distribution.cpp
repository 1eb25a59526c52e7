#include "renewal/distribution.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace renewal {

SummandDistribution::SummandDistribution(DistKind kind, double a, double b)
    : kind_(kind), a_(a), b_(b) {
  switch (kind_) {
    case DistKind::Constant:
      mu_ = a_;
      sigma2_ = 0.0;
      break;
    case DistKind::Exponential:
      mu_ = 1.0 / a_;
      sigma2_ = 1.0 / (a_ * a_);
      break;
    case DistKind::BernoulliScaled:
      mu_ = a_ * b_;
      sigma2_ = a_ * a_ * b_ * (1.0 - b_);
      break;
    case DistKind::ShiftedPareto:
      // Lomax moments: mean s/(alpha-1); variance finite only for alpha > 2.
      mu_ = b_ / (a_ - 1.0);
      sigma2_ = a_ > 2.0
                    ? b_ * b_ * a_ / ((a_ - 1.0) * (a_ - 1.0) * (a_ - 2.0))
                    : std::numeric_limits<double>::infinity();
      break;
  }
  if (!(mu_ > 0.0)) throw std::invalid_argument("summand mean must be > 0");
}

SummandDistribution SummandDistribution::constant(double value) {
  if (!(value > 0)) throw std::invalid_argument("constant summand must be > 0");
  return {DistKind::Constant, value, 0.0};
}

SummandDistribution SummandDistribution::exponential(double rate) {
  if (!(rate > 0)) throw std::invalid_argument("exponential rate must be > 0");
  return {DistKind::Exponential, rate, 0.0};
}

SummandDistribution SummandDistribution::bernoulli_scaled(double scale,
                                                           double prob) {
  if (!(scale > 0)) throw std::invalid_argument("bernoulli scale must be > 0");
  if (!(prob > 0.0 && prob <= 1.0))
    throw std::invalid_argument("bernoulli probability must be in (0,1]");
  return {DistKind::BernoulliScaled, scale, prob};
}

SummandDistribution SummandDistribution::shifted_pareto(double tail_index,
                                                        double scale) {
  if (!(tail_index > 1.0))
    throw std::invalid_argument("pareto tail index must be > 1 (finite mean)");
  if (!(scale > 0)) throw std::invalid_argument("pareto scale must be > 0");
  return {DistKind::ShiftedPareto, tail_index, scale};
}

bool SummandDistribution::continuous() const {
  return kind_ == DistKind::Exponential || kind_ == DistKind::ShiftedPareto;
}

double SummandDistribution::quantile(double u) const {
  switch (kind_) {
    case DistKind::Constant:
      return a_;
    case DistKind::Exponential:
      return -std::log1p(-u) / a_;
    case DistKind::BernoulliScaled:
      return u < 1.0 - b_ ? 0.0 : a_;
    case DistKind::ShiftedPareto:
      return b_ * (std::pow(1.0 - u, -1.0 / a_) - 1.0);
  }
  return 0.0;
}

double SummandDistribution::cdf(double x) const {
  if (x < 0) return 0.0;
  switch (kind_) {
    case DistKind::Constant:
      return x >= a_ ? 1.0 : 0.0;
    case DistKind::Exponential:
      return -std::expm1(-a_ * x);
    case DistKind::BernoulliScaled:
      return x >= a_ ? 1.0 : 1.0 - b_;
    case DistKind::ShiftedPareto:
      return 1.0 - std::pow(1.0 + x / b_, -a_);
  }
  return 0.0;
}

std::string SummandDistribution::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case DistKind::Constant:
      os << "constant(" << a_ << ")";
      break;
    case DistKind::Exponential:
      os << "exponential(rate=" << a_ << ")";
      break;
    case DistKind::BernoulliScaled:
      os << "bernoulli_scaled(scale=" << a_ << ",p=" << b_ << ")";
      break;
    case DistKind::ShiftedPareto:
      os << "shifted_pareto(alpha=" << a_ << ",scale=" << b_ << ")";
      break;
  }
  return os.str();
}

MomentSummary moment_summary(const SummandDistribution& dist, int d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  MomentSummary m;
  m.mu = dist.mu();
  m.sigma2 = dist.sigma2();
  m.nonnegative = dist.nonnegative();
  m.dimension = d;
  if (dist.kind() == DistKind::ShiftedPareto) {
    const double alpha = dist.param_a();
    // Polynomial tail: E(xi^beta log^k xi) < inf iff beta < alpha, and the
    // Wichura integrand xi^2 log^{d-1}/loglog needs alpha > 2, both
    // independently of the logarithmic factors.
    m.beta_limit = std::min(2.0, alpha);
    m.wichura_ok = alpha > 2.0;
    m.slln_log_moment_ok = alpha > 1.0;
  } else {
    // Constant and bernoulli are bounded; exponential has all moments.
    m.beta_limit = 2.0;
    m.wichura_ok = true;
    m.slln_log_moment_ok = true;
  }
  return m;
}

}  // namespace renewal
