#pragma once

#include <functional>
#include <vector>

namespace antichain {

// Adaptive Simpson quadrature (bisection refinement) with absolute
// tolerance; used by the closed-form normal-method formulas.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 60);

// LHS/ILHS indicator-estimand VRF at threshold c (Latin hypercube pair CDF
// substituted into 1 + (k-1)(F(c,c) - c^2)/(c(1-c))):
//   S_k(c) = (1 - {kc}) {kc} / (k c (1-c)).
double indicator_vrf_uniform(double c, int k);

// Closed-form interior maximum S_k* with its two maximizers, the relative
// gain R_k over k = 3, and the grid-search cross-check value.
struct TheoryRow {
  int k = 0;
  double s_star = 0.0;
  double c_star_low = 0.0;
  double c_star_high = 0.0;
  double r_k = 0.0;
  double grid_maximizer = 0.0;  // numeric argmax of (4.7)-style scan
  double grid_max_value = 0.0;
  double alpha = 0.0;  // k_alpha rows only
};

// S_k* = k / (3k - 4 + 2 sqrt(2(k-1)(k-2))) with maximizers
// c1* = (1/k)(1 + sqrt(k-1)/(sqrt(2k-4)+sqrt(k-1))) and its mirror;
// the leftmost numeric maximizer is refined until it agrees to ~1e-11.
TheoryRow indicator_vrf_max(int k);

double s_star_limit();  // 1/(3 + 2 sqrt(2))

// Relative efficiency gain R_k = (S_3* - S_k*)/(S_3* - S_inf*).
double relative_gain(int k);

// Minimum k reaching fraction alpha of the maximal-possible gain over
// k = 3; forward scan from k = 4 (R_3 = 0 by definition).
int k_alpha(double alpha);
std::vector<TheoryRow> k_alpha_table(const std::vector<double>& alphas);

// True correlation of (Phi(Z1), Phi(Z2)) under bivariate normal correlation
// rho, by quadrature of int Phi(rho t / sqrt(2 - rho^2)) Phi(t) phi(t) dt
// (the conditional-expectation identity); equals (6/pi) asin(rho/2).
double normal_pair_uniform_corr(double rho);

// Cubic small-rho expansion of the same map: (3/pi) rho + rho^3/(8 pi).
double normal_pair_uniform_corr_series(double rho);

// Phi_k(c,c) = P(X1 <= c, X2 <= c) for exchangeable normals at correlation
// rho_k = -1/(k-1), single-integral representation; k = 2 handled in closed
// form (X2 = -X1).
double normal_joint_cdf(double c, int k);

// Indicator-estimand VRF for the normal method,
// 1 + (k-1)(Phi_k(c,c) - Phi(c)^2)/(Phi(c)(1-Phi(c))).
double indicator_vrf_normal(double c, int k);

// Stationary cross-chain correlation of the coupled circle walk: -cos(2 tau).
double circle_corr_theory(double tau);

}  // namespace antichain
