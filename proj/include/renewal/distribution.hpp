#pragma once

#include <string>

namespace renewal {

enum class DistKind { Constant, Exponential, BernoulliScaled, ShiftedPareto };

// Law of the generic summand xi. Four closed-form families, all supported on
// [0, inf) with mean mu > 0:
//   constant(c)               xi = c
//   exponential(rate)         density rate*exp(-rate*x)
//   bernoulli_scaled(a, p)    xi = a with probability p, else 0
//   shifted_pareto(alpha, s)  survival (1 + x/s)^(-alpha), alpha > 1
// The pareto family exists to probe moment-condition failure; its variance is
// infinite for alpha <= 2.
class SummandDistribution {
 public:
  static SummandDistribution constant(double value);
  static SummandDistribution exponential(double rate);
  static SummandDistribution bernoulli_scaled(double scale, double prob);
  static SummandDistribution shifted_pareto(double tail_index, double scale);

  DistKind kind() const { return kind_; }
  double mu() const { return mu_; }
  double sigma2() const { return sigma2_; }  // +inf for pareto alpha <= 2
  bool nonnegative() const { return true; }
  bool continuous() const;

  // Inverse-CDF transform of u in [0,1); the single sampling path.
  double quantile(double u) const;
  double cdf(double x) const;

  double param_a() const { return a_; }
  double param_b() const { return b_; }
  std::string describe() const;

 private:
  SummandDistribution(DistKind kind, double a, double b);
  DistKind kind_;
  double a_ = 0, b_ = 0;  // family parameters
  double mu_ = 0, sigma2_ = 0;
};

// Analytic moment-condition report for dimension d.
struct MomentSummary {
  double mu = 0;
  double sigma2 = 0;
  // E(|xi|^beta log^{d-1}|xi|) < inf holds exactly for beta in [1, beta_limit)
  // intersected with [1,2).
  double beta_limit = 2.0;
  bool wichura_ok = true;        // E[xi^2 log^{d-1}|xi| / loglog|xi|] < inf
  bool slln_log_moment_ok = true;  // E(xi log^{d-1} xi) < inf
  bool nonnegative = true;
  int dimension = 0;

  bool beta_admissible(double beta) const {
    return beta >= 1.0 && beta < 2.0 && beta < beta_limit;
  }
};

MomentSummary moment_summary(const SummandDistribution& dist, int d);

}  // namespace renewal
