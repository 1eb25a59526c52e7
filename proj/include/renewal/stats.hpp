#pragma once

#include <functional>
#include <span>
#include <vector>

namespace renewal {

// Simple summary statistics with population-variance denominator n.
struct SummaryStats {
  std::size_t n = 0;
  double min = 0, max = 0, mean = 0, variance = 0;
};

SummaryStats summarize(std::span<const double> xs);

double normal_cdf(double x, double mean = 0.0, double sd = 1.0);

// One-sample Kolmogorov-Smirnov statistic D_n = sup_x |F_n(x) - F(x)|.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

// Asymptotic critical value sqrt(-log(alpha/2) / 2) / sqrt(n); at alpha=0.01
// this is the familiar 1.6276/sqrt(n).
double ks_critical_value(std::size_t n, double alpha);

double pearson_correlation(std::span<const double> a,
                           std::span<const double> b);

}  // namespace renewal
