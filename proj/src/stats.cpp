#include "renewal/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace renewal {

SummaryStats summarize(std::span<const double> xs) {
  SummaryStats s;
  s.min = std::numeric_limits<double>::infinity();
  s.max = -s.min;
  double m2 = 0;
  for (double x : xs) {
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
    const double d1 = x - s.mean;
    s.mean += d1 / static_cast<double>(++s.n);
    m2 += d1 * (x - s.mean);
  }
  if (s.n) s.variance = m2 / static_cast<double>(s.n);
  return s;
}

double normal_cdf(double x, double mean, double sd) {
  if (!(sd > 0)) throw std::invalid_argument("normal sd must be > 0");
  return 0.5 * std::erfc(-(x - mean) / (sd * std::sqrt(2.0)));
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("KS needs samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::max((i + 1) / n - f, f - i / n));
  }
  return d;
}

double ks_critical_value(std::size_t n, double alpha) {
  if (n == 0) throw std::invalid_argument("KS needs samples");
  if (!(alpha > 0 && alpha < 1))
    throw std::invalid_argument("alpha must be in (0,1)");
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) /
         std::sqrt(static_cast<double>(n));
}

double pearson_correlation(std::span<const double> a,
                           std::span<const double> b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("correlation needs equal nonempty samples");
  const auto sa = summarize(a);
  const auto sb = summarize(b);
  double cov = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    cov += (a[i] - sa.mean) * (b[i] - sb.mean);
  cov /= static_cast<double>(a.size());
  const double denom = std::sqrt(sa.variance * sb.variance);
  if (denom == 0) return 0.0;
  return cov / denom;
}

}  // namespace renewal
