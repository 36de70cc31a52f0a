#pragma once

#include <functional>
#include <span>
#include <vector>

#include "antichain/parallel.hpp"

namespace antichain {

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);  // denominator n-1

// Pearson correlation of two equal-length samples.
double pearson_corr(std::span<const double> xs, std::span<const double> ys);

// One-sample Kolmogorov-Smirnov statistic against an oracle CDF.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

// Two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Asymptotic critical value at significance alpha (two-sided, n >> 35):
// sqrt(-log(alpha/2)/2) / sqrt(n). At alpha = 0.01 the constant is 1.6276.
double ks_critical(std::size_t n, double alpha);
double ks_critical_two_sample(std::size_t n, std::size_t m, double alpha);

// Mean and jackknife standard error of a replicate-level statistic.
struct JackknifeResult {
  double estimate;
  double se;
};

// Orthant dependence diagnostic: largest positive excess of the empirical
// joint orthant probability over the product of margins, in units of the
// binomial SE, over a per-axis grid. Negative max excess means the NLOD
// (resp. NUOD) inequality held everywhere on the grid.
struct DependenceDiagnostic {
  double max_nlod_excess_se = 0.0;  // max over grid of (joint - product)/SE, lower orthant
  double max_nuod_excess_se = 0.0;  // same for the upper orthant
  double max_nlod_excess = 0.0;
  double max_nuod_excess = 0.0;
  std::size_t grid_points = 0;
};

// samples: n rows of k coordinates (row-major). grid: per-axis cut points.
DependenceDiagnostic nlod_nuod_check(std::span<const double> samples, int k,
                                     std::span<const double> grid,
                                     ExecMode mode = default_exec_mode());

}  // namespace antichain
