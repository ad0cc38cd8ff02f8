#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace moran {

struct OlsFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;  // standard OLS slope standard error
  double r2 = 0.0;
  std::size_t n = 0;
};

// Ordinary least squares of y on x; requires n >= 2 and non-degenerate x.
OlsFit ols_fit(std::span<const double> x, std::span<const double> y);

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation
  std::size_t n = 0;
};
MeanSd mean_sd(std::span<const double> xs);

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

// 0.5 * sum |p_i - q_i| over equal-length probability vectors.
double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace moran
