#pragma once

#include <functional>
#include <string>

namespace renewal {

// Extended logarithms: log_ext is 1 on [0,e), loglog_ext is 1 on [0,e^e),
// the natural (iterated) logarithm beyond. Both are positive, nondecreasing
// and continuous on all of R_+ (the extension meets the true value at the
// boundary). Negative input is a domain error.
double log_ext(double c);
double loglog_ext(double c);

inline constexpr double kEE = 15.154262241479262;  // e^e

enum class EnvelopeKind { Power, Phi, Chi, LowerQ, Custom };

// Envelope functions with the extended-log conventions:
//   power(beta):  p(t) = t^{1/beta}
//   phi():        sqrt(2 loglog t / t)
//   chi():        sqrt(2 t loglog t) = t * phi(t) for t >= e^e
//   lower_q():    sqrt(2 t (loglog t + 1))
// Custom envelopes must be nondecreasing with t -> p(t)/t nonincreasing for
// large t; violations on the probe grid raise std::invalid_argument.
class EnvelopeFn {
 public:
  static EnvelopeFn power(double beta);
  static EnvelopeFn phi();
  static EnvelopeFn chi();
  static EnvelopeFn lower_q();
  static EnvelopeFn custom(std::function<double(double)> fn, std::string name);

  double operator()(double t) const;
  EnvelopeKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

 private:
  EnvelopeFn(EnvelopeKind kind, double beta, std::function<double(double)> fn,
             std::string name);
  EnvelopeKind kind_;
  double beta_ = 0;
  std::function<double(double)> fn_;
  std::string name_;
};

}  // namespace renewal
