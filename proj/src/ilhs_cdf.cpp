#include "antichain/ilhs_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace antichain {

double ilhs_joint_cdf_exact(double u, double v, int k, int t) {
  if (k < 2) throw std::domain_error("ilhs_joint_cdf_exact: k must be >= 2");
  if (t < 0) throw std::domain_error("ilhs_joint_cdf_exact: t must be >= 0");
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
    throw std::domain_error("ilhs_joint_cdf_exact: arguments must lie in [0,1]");
  if (u > v) std::swap(u, v);
  if (t == 0) return u * v;

  const double a = k * u, b = k * v;
  const double iu = std::floor(a), iv = std::floor(b);
  const double fu = a - iu, fv = b - iv;
  const double denom = static_cast<double>(k) * (k - 1.0);
  if (iv == 0.0) return 0.0;
  if (iu == iv) return (a * (b - 1.0) - fu * (fv - 1.0)) / denom;
  return (a * (b - 1.0) - fu * fv + ilhs_joint_cdf_exact(fu, fv, k, t - 1)) / denom;
}

ExactIlhsCdf::ExactIlhsCdf(int k, int t) : k_(k), t_(t) {
  if (k < 2 || t < 0) throw std::domain_error("ExactIlhsCdf: need k >= 2, t >= 0");
}

double ilhs_corr_theory(int k, int t) {
  if (k < 2 || t < 0) throw std::domain_error("ilhs_corr_theory: need k >= 2, t >= 0");
  return -(1.0 / (k - 1.0)) * (1.0 - std::pow(static_cast<double>(k), -2.0 * t));
}

double hoeffding_corr_from_cdf(const ExactIlhsCdf& cdf, std::size_t grid_n, ExecMode mode) {
  if (grid_n < 2 || grid_n % 2 != 0) throw std::domain_error("hoeffding: grid_n must be even");
  const std::size_t n = grid_n + 1;
  const double h = 1.0 / static_cast<double>(grid_n);
  std::vector<double> row_sums(n, 0.0);
  par_for(static_cast<std::int64_t>(n), mode, [&](std::int64_t ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    const double u = static_cast<double>(i) * h;
    const double wi = (i == 0 || i == grid_n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = static_cast<double>(j) * h;
      const double wj = (j == 0 || j == grid_n) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
      s += wj * (cdf(u, v) - u * v);
    }
    row_sums[i] = wi * s;
  });
  double total = 0.0;
  for (double s : row_sums) total += s;
  const double integral = total * h * h / 9.0;
  return 12.0 * integral;
}

double thm7_bound(int k, int t) {
  if (k < 2 || t < 1) throw std::domain_error("thm7_bound: need k >= 2, t >= 1");
  return std::pow(static_cast<double>(k), -(t - 1.0)) * std::pow(k - 1.0, -(t + 2.0));
}

KsBoundReport ks_distance_bound_check(int k, int t, int m, std::size_t grid_n, ExecMode mode) {
  if (m < 1) throw std::domain_error("ks_distance_bound_check: m must be >= 1");
  KsBoundReport report;
  report.bound = thm7_bound(k, t);
  report.grid_n = grid_n;
  const std::size_t n = grid_n + 1;
  const double h = 1.0 / static_cast<double>(grid_n);
  std::vector<double> row_max(n, 0.0);
  par_for(static_cast<std::int64_t>(n), mode, [&](std::int64_t ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    const double u = static_cast<double>(i) * h;
    double d = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = static_cast<double>(j) * h;
      d = std::max(d, std::abs(ilhs_joint_cdf_exact(u, v, k, t + m) - ilhs_joint_cdf_exact(u, v, k, t)));
    }
    row_max[i] = d;
  });
  report.d_observed = *std::max_element(row_max.begin(), row_max.end());
  report.within_bound = report.d_observed <= report.bound;
  return report;
}

}  // namespace antichain
