#include "antichain/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace antichain {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::domain_error("mean: empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  if (xs.size() < 2) throw std::domain_error("variance: need at least 2 points");
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

double pearson_corr(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw std::domain_error("pearson_corr: bad sizes");
  const double mx = mean(xs), my = mean(ys);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw std::domain_error("pearson_corr: degenerate sample");
  return sxy / std::sqrt(sxx * syy);
}

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::domain_error("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n, (static_cast<double>(i) + 1.0) / n - f));
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::domain_error("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical(std::size_t n, double alpha) {
  if (alpha <= 0.0 || alpha >= 1.0) throw std::domain_error("ks_critical: alpha in (0,1)");
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

double ks_critical_two_sample(std::size_t n, std::size_t m, double alpha) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return c * std::sqrt((static_cast<double>(n) + static_cast<double>(m)) /
                       (static_cast<double>(n) * static_cast<double>(m)));
}

DependenceDiagnostic nlod_nuod_check(std::span<const double> samples, int k,
                                     std::span<const double> grid, ExecMode mode) {
  if (k < 2) throw std::domain_error("nlod_nuod_check: k must be >= 2");
  if (samples.size() % static_cast<std::size_t>(k) != 0)
    throw std::domain_error("nlod_nuod_check: sample size not a multiple of k");
  const std::size_t n = samples.size() / static_cast<std::size_t>(k);
  if (n < 2) throw std::domain_error("nlod_nuod_check: need at least 2 rows");
  const std::size_t g = grid.size();

  // per-axis marginal orthant probabilities
  std::vector<double> lo_margin(static_cast<std::size_t>(k) * g, 0.0);
  std::vector<double> hi_margin(static_cast<std::size_t>(k) * g, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (int c = 0; c < k; ++c) {
      const double x = samples[r * static_cast<std::size_t>(k) + static_cast<std::size_t>(c)];
      for (std::size_t gi = 0; gi < g; ++gi) {
        if (x <= grid[gi]) lo_margin[static_cast<std::size_t>(c) * g + gi] += 1.0;
        if (x > grid[gi]) hi_margin[static_cast<std::size_t>(c) * g + gi] += 1.0;
      }
    }
  }
  for (auto& v : lo_margin) v /= static_cast<double>(n);
  for (auto& v : hi_margin) v /= static_cast<double>(n);

  // scan all grid^k corner combinations
  std::size_t total = 1;
  for (int c = 0; c < k; ++c) total *= g;

  std::vector<double> nlod_se(total, 0.0), nuod_se(total, 0.0);
  std::vector<double> nlod_raw(total, 0.0), nuod_raw(total, 0.0);
  par_for(static_cast<std::int64_t>(total), mode, [&](std::int64_t cell) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(k));
    std::size_t rem = static_cast<std::size_t>(cell);
    for (int c = 0; c < k; ++c) {
      idx[static_cast<std::size_t>(c)] = rem % g;
      rem /= g;
    }
    std::size_t lo_count = 0, hi_count = 0;
    for (std::size_t r = 0; r < n; ++r) {
      bool all_lo = true, all_hi = true;
      for (int c = 0; c < k && (all_lo || all_hi); ++c) {
        const double x = samples[r * static_cast<std::size_t>(k) + static_cast<std::size_t>(c)];
        const double t = grid[idx[static_cast<std::size_t>(c)]];
        if (x > t) all_lo = false;
        if (x <= t) all_hi = false;
      }
      if (all_lo) ++lo_count;
      if (all_hi) ++hi_count;
    }
    const double pj_lo = static_cast<double>(lo_count) / static_cast<double>(n);
    const double pj_hi = static_cast<double>(hi_count) / static_cast<double>(n);
    double prod_lo = 1.0, prod_hi = 1.0;
    for (int c = 0; c < k; ++c) {
      prod_lo *= lo_margin[static_cast<std::size_t>(c) * g + idx[static_cast<std::size_t>(c)]];
      prod_hi *= hi_margin[static_cast<std::size_t>(c) * g + idx[static_cast<std::size_t>(c)]];
    }
    const double se_lo = std::sqrt(std::max(pj_lo * (1.0 - pj_lo), 1.0 / static_cast<double>(n)) / static_cast<double>(n));
    const double se_hi = std::sqrt(std::max(pj_hi * (1.0 - pj_hi), 1.0 / static_cast<double>(n)) / static_cast<double>(n));
    nlod_raw[static_cast<std::size_t>(cell)] = pj_lo - prod_lo;
    nuod_raw[static_cast<std::size_t>(cell)] = pj_hi - prod_hi;
    nlod_se[static_cast<std::size_t>(cell)] = (pj_lo - prod_lo) / se_lo;
    nuod_se[static_cast<std::size_t>(cell)] = (pj_hi - prod_hi) / se_hi;
  });

  DependenceDiagnostic d;
  d.grid_points = total;
  d.max_nlod_excess_se = *std::max_element(nlod_se.begin(), nlod_se.end());
  d.max_nuod_excess_se = *std::max_element(nuod_se.begin(), nuod_se.end());
  d.max_nlod_excess = *std::max_element(nlod_raw.begin(), nlod_raw.end());
  d.max_nuod_excess = *std::max_element(nuod_raw.begin(), nuod_raw.end());
  return d;
}

}  // namespace antichain
