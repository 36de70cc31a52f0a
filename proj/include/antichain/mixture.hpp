#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "antichain/random.hpp"

namespace antichain {

// Two-component normal mixture p f0 + (1-p) f1 with known components and a
// flat prior on the weight p; the HRT data augmentation operates on the
// latent component indicators. Immutable after construction.
class MixtureModel {
 public:
  MixtureModel(std::vector<double> data, double f0_mean, double f0_var, double f1_mean,
               double f1_var);

  std::size_t n() const { return data_.size(); }
  const std::vector<double>& data() const { return data_; }
  double f0_mean() const { return f0_mean_; }
  double f0_var() const { return f0_var_; }
  double f1_mean() const { return f1_mean_; }
  double f1_var() const { return f1_var_; }

  // P(z_i = 0 | p, x_i) = p f0(x_i) / (p f0(x_i) + (1-p) f1(x_i)),
  // strictly increasing in p.
  double indicator_threshold(std::size_t i, double p) const;

  // log posterior of p up to a constant, sum_i log(p f0_i + (1-p) f1_i).
  double log_posterior(double p) const;

  // max of log_posterior over a fixed fine grid (for overflow-safe exp).
  double log_posterior_max() const { return log_posterior_max_; }

 private:
  std::vector<double> data_;
  double f0_mean_, f0_var_, f1_mean_, f1_var_;
  std::vector<double> log_f0_, log_f1_, ratio_f1_f0_;
  double log_posterior_max_;
};

// Latent state of the HRT chain: the weight, the indicator vector and the
// count of zeros (m = #{i : z_i = 0}, kept consistent with z).
struct MixtureState {
  double p = 0.0;
  std::vector<std::uint8_t> z;
  std::size_t m = 0;
};

// Indicator step: z_i = 0 iff u_i <= threshold_i(p). m is nondecreasing in p
// at fixed u-block.
void mixture_indicator_step(double p, std::span<const double> u_block, const MixtureModel& model,
                            std::vector<std::uint8_t>& z_out, std::size_t& m_out);

// Weight update psi: partial/total sum of the positive w-block,
// sum_{r<=m+1} w_r / sum_{r<=n+2} w_r. Beta(m+1, n-m+1) in law when the w's
// are i.i.d. exponential(1).
double mixture_p_update(std::size_t m, std::span<const double> w_block);

// Full composition (indicator step, then weight update); nondecreasing in p
// at fixed randomness, which is what makes the 0/1 sandwich of CFTP valid.
double mixture_psi(double p, std::span<const double> u_block, std::span<const double> w_block,
                   const MixtureModel& model);

// CFTP-oriented step: consumes one ledger row laid out as
// [n indicator uniforms | n+2 exponential-generating uniforms].
MixtureState mixture_cftp_step(const MixtureState& s, std::span<const double> u,
                               const MixtureModel& model);

// Coalescence test on the discrete indicator vectors; equal z forces
// bit-identical p under the shared w-block, no floating tolerance involved.
bool coalescence_test_mixture(const MixtureState& bottom, const MixtureState& top);

// Unnormalized posterior density, exponentiated against the grid max.
double mixture_posterior_density(double p, const MixtureModel& model);

// Quadrature CDF of the posterior on [0,1] (composite Simpson on grid_n+1
// nodes, grid_n even), linearly interpolated between nodes.
class MixturePosteriorCdf {
 public:
  MixturePosteriorCdf(const MixtureModel& model, std::size_t grid_n = 10000);
  double operator()(double p) const;

 private:
  std::vector<double> cum_;  // cumulative mass at nodes 0..grid_n
  std::size_t grid_n_;
};

// Synthetic observed data from w N(mu0, var0) + (1-w) N(mu1, var1).
std::vector<double> synthetic_mixture_data(std::size_t n, double w, double mu0, double var0,
                                           double mu1, double var1, std::uint64_t seed);

// Default desk-scale dataset: n = 50 from 0.33 N(3.2, 3.2) + 0.67 N(1.4, 1.4),
// fixed dataset seed.
MixtureModel default_mixture_model();

}  // namespace antichain
