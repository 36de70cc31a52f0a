#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace antichain {

// Antithetically coupled random walk on the unit circle. The joint chain is
// non-ergodic: each update conserves the acute angle tau between the chord
// X_t Y_t and the horizontal diameter, so the pair is trapped in S(tau).
struct CircleState {
  double theta_x = 0.0;  // in [0, 2*pi)
  double theta_y = 0.0;
};

inline double mod_2pi(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(a, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

// One coupled step with shared slope angle theta in [0, pi):
//   theta_x' = (-theta_x + pi + 2 theta) mod 2pi
//   theta_y' = (-theta_y + pi - 2 theta) mod 2pi
inline CircleState circle_update(const CircleState& s, double theta) {
  if (!(theta >= 0.0 && theta < std::numbers::pi))
    throw std::domain_error("circle_update: theta must be in [0, pi)");
  return {mod_2pi(-s.theta_x + std::numbers::pi + 2.0 * theta),
          mod_2pi(-s.theta_y + std::numbers::pi - 2.0 * theta)};
}

// Recover tau in [0, pi/2] from theta_x + theta_y = (2k+1) pi +- 2 tau,
// k = 0,1, taking the branch that folds into range.
inline double circle_tau(const CircleState& s) {
  const double pi = std::numbers::pi;
  const double sum = s.theta_x + s.theta_y;  // in [0, 4*pi)
  return std::min(std::abs(sum - pi), std::abs(sum - 3.0 * pi)) / 2.0;
}

// Start state on S(tau) with the pair placed symmetrically about the
// vertical axis: theta_x + theta_y = pi + 2 tau.
inline CircleState circle_start(double tau) {
  if (!(tau >= 0.0 && tau <= std::numbers::pi / 2.0))
    throw std::domain_error("circle_start: tau must be in [0, pi/2]");
  return {std::numbers::pi / 2.0 + tau, std::numbers::pi / 2.0 + tau};
}

}  // namespace antichain
