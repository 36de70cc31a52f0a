#pragma once

#include <cstddef>
#include <vector>

namespace antichain {

// One (generator, sampler, estimand) cell: estimated pairwise correlation,
// size-fixed VRF S_k = 1 + (k-1) rho_hat, its jackknife SE, and the
// time-fixed pieces once timings are attached.
struct VrfReport {
  double rho_hat = 0.0;
  double s_k = 1.0;
  double se_s = 0.0;
  double t_k = 0.0;    // C_k * S_k, 0 until timings attached
  double c_k = 0.0;    // (tau_k / k) / tau_1
  double tau_k = 0.0;  // seconds per joint k-draw
  double tau_1 = 0.0;  // seconds per specialized independent draw
  double sigma_f2 = 0.0;
  int k = 0;
  std::size_t replicates = 0;
};

// Size-fixed VRF from m independent replicates of exchangeable k-tuples of
// estimand values (row-major m x k). rho_hat is the pooled-variance average
// of the k(k-1)/2 pair covariances, which keeps S_k = 1 + (k-1) rho_hat an
// identity and makes the one-step chain case agree with vrf_generalized
// bit for bit. SE by leave-one-replicate-out jackknife.
VrfReport vrf_size_fixed(const std::vector<std::vector<double>>& samples);

// Generalized (forward-chain) VRF from replicated runs: values[r][j][t] is
// the estimand at step t of chain j in replicate r. Reduces each chain to
// its step sum, then S_k = 1 + sum_{j1 != j2} cov / sum_j var estimated
// across replicates (equivalently the double-sum of between-chain
// autocovariances over within-chain ones).
VrfReport vrf_generalized(const std::vector<std::vector<std::vector<double>>>& values);

// Attach timings: C_k = (tau_k / k) / tau_1 and T_k = C_k * S_k.
VrfReport vrf_time_fixed(VrfReport report, double tau_k, double tau_1);

// Within-chain (gamma) and between-chain (beta) autocovariances on a lag
// grid, moment-estimated across replicates with jackknife SEs.
struct AutocovEstimates {
  std::vector<int> lag_grid;
  int k = 0;
  // gamma[(a,b),j]: Cov(f(X_{t_a}^j), f(X_{t_b}^j)); row-major over (a,b) pairs
  std::vector<double> gamma, gamma_se;
  // beta[(a,b),(j1<j2)]: Cov(f(X_{t_a}^{j1}), f(X_{t_b}^{j2})), both orders folded
  std::vector<double> beta, beta_se;
  // chains are exchangeable under the coupled construction, so the pairs
  // share one value in law; the pooled estimate averages them and carries a
  // jackknife SE of its own
  std::vector<double> beta_pooled, beta_pooled_se;
  std::size_t grid_size = 0;   // lag_grid.size()^2
  std::size_t pair_count = 0;  // k(k-1)/2

  double gamma_at(std::size_t a, std::size_t b, int j) const;
  double beta_at(std::size_t a, std::size_t b, std::size_t pair) const;
  double beta_se_at(std::size_t a, std::size_t b, std::size_t pair) const;
  double beta_pooled_at(std::size_t a, std::size_t b) const;
  double beta_pooled_se_at(std::size_t a, std::size_t b) const;
};

AutocovEstimates estimate_autocovs(const std::vector<std::vector<std::vector<double>>>& values,
                                   const std::vector<int>& lag_grid);

}  // namespace antichain
