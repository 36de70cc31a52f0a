#pragma once

#include <cmath>
#include <stdexcept>

namespace antichain {

// Slice-sampler Gibbs update for the target x^2 exp(-e^x) on x >= 0
// (Damien-Wakefield-Walker auxiliary-variable scheme):
//   x' = xi1^{1/3} * log(e^x - log(1 - xi2)).
// Nondecreasing in each of (x, xi1, xi2); the 1 - xi2 placement is what
// makes it nondecreasing in xi2.
inline double slice_update(double x, double xi1, double xi2) {
  if (!(x >= 0.0)) throw std::domain_error("slice_update: state must be >= 0");
  if (!(xi1 > 0.0 && xi1 < 1.0) || !(xi2 > 0.0 && xi2 < 1.0))
    throw std::domain_error("slice_update: uniforms must be in (0,1)");
  return std::cbrt(xi1) * std::log(std::exp(x) - std::log1p(-xi2));
}

// Unnormalized log stationary density, log pi(x) = 2 log x - e^x on x > 0.
inline double slice_log_density(double x) {
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  return 2.0 * std::log(x) - std::exp(x);
}

}  // namespace antichain
