#pragma once

#include <cstddef>

#include "antichain/parallel.hpp"

namespace antichain {

// Exact bivariate CDF F_t(u,v) of an ILHS coordinate pair after t
// refinement steps, via the three-branch recursion on ({ku},{kv}) with the
// symmetry swap u <= v; F_0(u,v) = uv. O(t) work per evaluation.
double ilhs_joint_cdf_exact(double u, double v, int k, int t);

// Evaluator form of the same recursion.
class ExactIlhsCdf {
 public:
  ExactIlhsCdf(int k, int t);
  double operator()(double u, double v) const { return ilhs_joint_cdf_exact(u, v, k_, t_); }
  int k() const { return k_; }
  int t() const { return t_; }

 private:
  int k_;
  int t_;
};

// Closed-form pair correlation -(1/(k-1)) (1 - k^{-2t}).
double ilhs_corr_theory(int k, int t);

// Correlation through the Hoeffding identity, 12 * double integral of
// (F_t - uv), composite Simpson on a (grid_n+1)^2 grid (grid_n even;
// default 400 panels per axis). Because F_t is piecewise bilinear the
// quadrature lands well inside the 1e-6 error target.
double hoeffding_corr_from_cdf(const ExactIlhsCdf& cdf, std::size_t grid_n = 400,
                               ExecMode mode = default_exec_mode());

// Kolmogorov-Smirnov distance bound k^{-(t-1)} (k-1)^{-(t+2)} between the
// pair CDFs at refinement depths t and t+m (any m >= 1, any monotone pair
// of estimand maps).
double thm7_bound(int k, int t);

struct KsBoundReport {
  double d_observed = 0.0;  // sup over the grid of |F_{t+m} - F_t|
  double bound = 0.0;
  std::size_t grid_n = 0;
  bool within_bound = false;
};

KsBoundReport ks_distance_bound_check(int k, int t, int m, std::size_t grid_n = 400,
                                      ExecMode mode = default_exec_mode());

}  // namespace antichain
