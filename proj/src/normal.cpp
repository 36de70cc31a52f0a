#include "antichain/normal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace antichain {

namespace {
constexpr double INV_SQRT2 = std::numbers::sqrt2 / 2.0;
constexpr double SQRT_2PI = 2.5066282746310005024;
constexpr double INV_SQRT_2PI = 0.3989422804014326779;
}  // namespace

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x * INV_SQRT2); }

double std_normal_pdf(double x) { return INV_SQRT_2PI * std::exp(-0.5 * x * x); }

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("std_normal_quantile: p must be in (0,1)");
  const bool upper = p > 0.5;
  // 1-p is exact for p in [0.5, 1]
  double q = upper ? 1.0 - p : p;

  double x;
  if (q >= 0.08) {
    // Maclaurin series of Phi^{-1}(1/2 - r) in w = sqrt(2*pi)*r
    const double w = SQRT_2PI * (0.5 - q);
    const double w2 = w * w;
    x = -w * (1.0 + w2 * (1.0 / 6.0 + w2 * (7.0 / 120.0 + w2 * (127.0 / 5040.0 + w2 * (4369.0 / 362880.0 + w2 * (34807.0 / 5702400.0))))));
  } else {
    // tail: fixed-point refinement of x^2 = -2 log(q * x * sqrt(2*pi))
    const double l = -2.0 * std::log(q);
    x = std::sqrt(l);
    for (int i = 0; i < 8; ++i) {
      double t = l - 2.0 * std::log(x) - std::log(2.0 * std::numbers::pi);
      x = std::sqrt(t > 1.0 ? t : 1.0);
    }
    x = -x;
  }

  // Halley refinement against the erfc kernel
  for (int i = 0; i < 4; ++i) {
    const double e = std_normal_cdf(x) - q;
    const double d = std_normal_pdf(x);
    if (d <= 0.0) break;
    const double u = e / d;
    x -= u / (1.0 + 0.5 * x * u);
  }
  return upper ? -x : x;
}

double exp_from_uniform(double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("exp_from_uniform: u must be in (0,1)");
  return -std::log1p(-u);
}

}  // namespace antichain
