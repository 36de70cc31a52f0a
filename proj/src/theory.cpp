#include "antichain/theory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "antichain/normal.hpp"

namespace antichain {

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double m, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, lm, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_rec(f, m, rm, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol,
                        int max_depth) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, m, b, fa, fm, fb, whole, abs_tol, max_depth);
}

double indicator_vrf_uniform(double c, int k) {
  if (!(c > 0.0 && c < 1.0)) throw std::domain_error("indicator_vrf_uniform: c must be in (0,1)");
  if (k < 2) throw std::domain_error("indicator_vrf_uniform: k must be >= 2");
  const double kc = k * c;
  const double frac = kc - std::floor(kc);
  return (1.0 - frac) * frac / (kc * (1.0 - c));
}

double s_star_limit() { return 1.0 / (3.0 + 2.0 * std::numbers::sqrt2); }

namespace {

double s_star(int k) {
  return k / (3.0 * k - 4.0 + 2.0 * std::sqrt(2.0 * (k - 1.0) * (k - 2.0)));
}

}  // namespace

TheoryRow indicator_vrf_max(int k) {
  if (k < 3) throw std::domain_error("indicator_vrf_max: requires k >= 3 (interior stratum)");
  TheoryRow row;
  row.k = k;
  row.s_star = s_star(k);
  const double root = std::sqrt(k - 1.0) / (std::sqrt(2.0 * k - 4.0) + std::sqrt(k - 1.0));
  row.c_star_low = (1.0 + root) / k;
  row.c_star_high = (k - 2.0 + root) / k;
  row.r_k = relative_gain(k);

  // leftmost grid argmax over [1/k, (k-1)/k], then two parabolic refinements
  const double lo = 1.0 / k, hi = (k - 1.0) / static_cast<double>(k);
  const std::size_t grid = 200000;
  double best_c = lo, best_v = -1.0;
  for (std::size_t i = 1; i < grid; ++i) {
    const double c = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid);
    const double v = indicator_vrf_uniform(c, k);
    if (v > best_v + 1e-12) {
      best_v = v;
      best_c = c;
    }
  }
  // two parabolic-vertex refinements; the second step size balances the
  // O(h^2) fit bias against eps/h evaluation noise
  const double steps[2] = {(hi - lo) / static_cast<double>(grid), 1e-7};
  for (double h : steps) {
    const double f0 = indicator_vrf_uniform(best_c - h, k);
    const double f1 = indicator_vrf_uniform(best_c, k);
    const double f2 = indicator_vrf_uniform(best_c + h, k);
    const double denom = f0 - 2.0 * f1 + f2;
    if (denom < 0.0) best_c += 0.5 * h * (f0 - f2) / denom;
  }
  row.grid_maximizer = best_c;
  row.grid_max_value = indicator_vrf_uniform(best_c, k);
  return row;
}

double relative_gain(int k) {
  const double s3 = s_star(3);
  return (s3 - s_star(k)) / (s3 - s_star_limit());
}

int k_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("k_alpha: alpha must be in (0,1)");
  for (int k = 4;; ++k)
    if (relative_gain(k) >= alpha) return k;
}

std::vector<TheoryRow> k_alpha_table(const std::vector<double>& alphas) {
  std::vector<TheoryRow> rows;
  rows.reserve(alphas.size());
  for (double a : alphas) {
    TheoryRow row = indicator_vrf_max(k_alpha(a));
    row.alpha = a;
    rows.push_back(row);
  }
  return rows;
}

double normal_pair_uniform_corr(double rho) {
  if (!(rho >= -1.0 && rho <= 1.0)) throw std::domain_error("normal_pair_uniform_corr: |rho| <= 1");
  if (rho == 0.0) return 0.0;
  const double scale = rho / std::sqrt(2.0 - rho * rho);
  auto f = [scale](double t) { return std_normal_cdf(scale * t) * std_normal_cdf(t) * std_normal_pdf(t); };
  const double integral = adaptive_simpson(f, -8.0, 8.0, 1e-12);
  return (integral - 0.25) * 12.0;
}

double normal_pair_uniform_corr_series(double rho) {
  return (3.0 / std::numbers::pi) * rho + rho * rho * rho / (8.0 * std::numbers::pi);
}

double normal_joint_cdf(double c, int k) {
  if (k < 2) throw std::domain_error("normal_joint_cdf: k must be >= 2");
  if (k == 2) return std::max(2.0 * std_normal_cdf(c) - 1.0, 0.0);  // X2 = -X1
  const double rho = -1.0 / (k - 1.0);
  const double sp = std::sqrt(2.0 * (1.0 + rho));
  const double sm = std::sqrt(2.0 * (1.0 - rho));
  const double upper = 2.0 * c / sp;
  auto f = [c, sp, sm](double z) {
    return std_normal_cdf((2.0 * c - z * sp) / sm) * std_normal_pdf(z);
  };
  const double lo = std::min(-9.0, upper - 1.0);
  const double hi = std::min(upper, 9.0);
  const double integral = adaptive_simpson(f, lo, hi, 1e-11);
  return 2.0 * integral - std_normal_cdf(upper);
}

double indicator_vrf_normal(double c, int k) {
  const double p = std_normal_cdf(c);
  const double joint = normal_joint_cdf(c, k);
  return 1.0 + (k - 1.0) * (joint - p * p) / (p * (1.0 - p));
}

double circle_corr_theory(double tau) {
  if (!(tau >= 0.0 && tau <= std::numbers::pi / 2.0))
    throw std::domain_error("circle_corr_theory: tau must be in [0, pi/2]");
  return -std::cos(2.0 * tau);
}

}  // namespace antichain
