#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "antichain/generators.hpp"

namespace antichain {

// Grouped cell of the latent membranous lupus nephritis table: covariates,
// case count (numerator) and patient count (denominator).
struct LupusCell {
  double igg_diff;  // IgG3 - IgG4
  double iga;
  int cases;
  int total;
};

// The embedded dataset: 55 patients, 18 cases.
const std::vector<LupusCell>& lupus_table();

// Small dense helpers sized for p ~ 3; row-major storage.
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> a;
  double& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

// Bayesian probit regression model under a flat prior: design matrix,
// 0/1 outcomes, and the precomputed pieces of the Gibbs sampler
// ((X'X)^{-1}, its lower Cholesky factor, and the hat operator (X'X)^{-1}X').
class ProbitModel {
 public:
  ProbitModel(Matrix design, std::vector<int> outcomes);

  std::size_t n() const { return y_.size(); }
  std::size_t p() const { return x_.cols; }
  const Matrix& design() const { return x_; }
  const std::vector<int>& outcomes() const { return y_; }
  const Matrix& xtx_inv() const { return xtx_inv_; }
  const Matrix& chol() const { return chol_; }  // L with L L' = (X'X)^{-1}
  const Matrix& hat() const { return hat_; }    // (X'X)^{-1} X'

  // beta_tilde = (X'X)^{-1} X' psi
  std::vector<double> beta_tilde(std::span<const double> psi) const;
  // linear predictor x_i' beta
  double eta(std::size_t i, std::span<const double> beta) const;

 private:
  Matrix x_;
  std::vector<int> y_;
  Matrix xtx_inv_, chol_, hat_;
};

// Model built from the embedded lupus table with columns
// (intercept, IgG3-IgG4, IgA).
ProbitModel lupus_probit_model();

struct ProbitState {
  std::vector<double> beta;
  std::vector<double> psi;
};

// beta draw: beta = L z + beta_tilde(psi), z a vector of p standard normals
// (coordinate j of p cross-chain NA tuples, in the coupled setting).
std::vector<double> probit_beta_step(const ProbitState& state, const ProbitModel& model,
                                     std::span<const double> z);

// Inverse-CDF truncated normal (Gelfand-Smith-Lee): positive branch for
// y = 1, mirrored negative branch for y = 0; nondecreasing in u in both.
// Computed through the no-cancellation tail mass so the output sign always
// matches y; the Phi^{-1} argument is floored at 1e-300.
double truncated_normal_inv(double mu, double sigma, int y, double u);

// Damped-Newton probit MLE (flat-prior posterior mode) with observed-
// information standard errors. Tolerance on the gradient sup-norm.
struct ProbitFit {
  std::vector<double> beta;
  std::vector<double> sd;
  int iterations = 0;
  double grad_norm = 0.0;
};
ProbitFit probit_mle(const ProbitModel& model, double tol = 1e-10, int max_iter = 200);

}  // namespace antichain
