#include "antichain/mixture.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "antichain/generators.hpp"
#include "antichain/normal.hpp"

namespace antichain {

namespace {

double normal_log_pdf(double x, double mean, double var) {
  const double d = x - mean;
  return -0.5 * (std::log(2.0 * std::numbers::pi * var) + d * d / var);
}

}  // namespace

MixtureModel::MixtureModel(std::vector<double> data, double f0_mean, double f0_var, double f1_mean,
                           double f1_var)
    : data_(std::move(data)), f0_mean_(f0_mean), f0_var_(f0_var), f1_mean_(f1_mean), f1_var_(f1_var) {
  if (f0_var <= 0.0 || f1_var <= 0.0) throw std::domain_error("MixtureModel: variances must be > 0");
  log_f0_.reserve(data_.size());
  log_f1_.reserve(data_.size());
  ratio_f1_f0_.reserve(data_.size());
  for (double x : data_) {
    const double l0 = normal_log_pdf(x, f0_mean_, f0_var_);
    const double l1 = normal_log_pdf(x, f1_mean_, f1_var_);
    log_f0_.push_back(l0);
    log_f1_.push_back(l1);
    ratio_f1_f0_.push_back(std::exp(l1 - l0));
  }
  log_posterior_max_ = log_posterior(0.0);
  for (int i = 1; i <= 4096; ++i) {
    const double lp = log_posterior(static_cast<double>(i) / 4096.0);
    if (lp > log_posterior_max_) log_posterior_max_ = lp;
  }
}

double MixtureModel::indicator_threshold(std::size_t i, double p) const {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  // 1 / (1 + (1-p)/p * f1/f0), computed through the density ratio
  return 1.0 / (1.0 + (1.0 - p) / p * ratio_f1_f0_[i]);
}

double MixtureModel::log_posterior(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("log_posterior: p must be in [0,1]");
  double lp = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    const double a = log_f0_[i], b = log_f1_[i];
    // log(p e^a + (1-p) e^b), stable about the larger exponent
    const double m = std::max(a, b);
    lp += m + std::log(p * std::exp(a - m) + (1.0 - p) * std::exp(b - m));
  }
  return lp;
}

void mixture_indicator_step(double p, std::span<const double> u_block, const MixtureModel& model,
                            std::vector<std::uint8_t>& z_out, std::size_t& m_out) {
  if (u_block.size() != model.n()) throw std::domain_error("mixture_indicator_step: u-block size");
  z_out.resize(model.n());
  std::size_t m = 0;
  for (std::size_t i = 0; i < model.n(); ++i) {
    const bool zero = u_block[i] <= model.indicator_threshold(i, p);
    z_out[i] = zero ? 0 : 1;
    if (zero) ++m;
  }
  m_out = m;
}

double mixture_p_update(std::size_t m, std::span<const double> w_block) {
  if (w_block.size() < 2) throw std::domain_error("mixture_p_update: need n+2 >= 2 weights");
  const std::size_t n = w_block.size() - 2;
  if (m > n) throw std::domain_error("mixture_p_update: m exceeds n");
  double partial = 0.0, total = 0.0;
  for (std::size_t r = 0; r < w_block.size(); ++r) {
    if (!(w_block[r] > 0.0)) throw std::domain_error("mixture_p_update: weights must be positive");
    total += w_block[r];
    if (r <= m) partial += w_block[r];
  }
  return partial / total;
}

double mixture_psi(double p, std::span<const double> u_block, std::span<const double> w_block,
                   const MixtureModel& model) {
  std::vector<std::uint8_t> z;
  std::size_t m = 0;
  mixture_indicator_step(p, u_block, model, z, m);
  return mixture_p_update(m, w_block);
}

MixtureState mixture_cftp_step(const MixtureState& s, std::span<const double> u,
                               const MixtureModel& model) {
  const std::size_t n = model.n();
  if (u.size() != 2 * n + 2) throw std::domain_error("mixture_cftp_step: randomness row size");
  MixtureState out;
  mixture_indicator_step(s.p, u.subspan(0, n), model, out.z, out.m);
  std::vector<double> w(n + 2);
  for (std::size_t r = 0; r < n + 2; ++r) w[r] = exp_from_uniform(u[n + r]);
  out.p = mixture_p_update(out.m, w);
  return out;
}

bool coalescence_test_mixture(const MixtureState& bottom, const MixtureState& top) {
  return bottom.z == top.z;
}

double mixture_posterior_density(double p, const MixtureModel& model) {
  return std::exp(model.log_posterior(p) - model.log_posterior_max());
}

MixturePosteriorCdf::MixturePosteriorCdf(const MixtureModel& model, std::size_t grid_n)
    : grid_n_(grid_n) {
  if (grid_n < 2 || grid_n % 2 != 0) throw std::domain_error("MixturePosteriorCdf: grid_n must be even");
  std::vector<double> dens(grid_n + 1);
  for (std::size_t i = 0; i <= grid_n; ++i)
    dens[i] = mixture_posterior_density(static_cast<double>(i) / static_cast<double>(grid_n), model);
  cum_.assign(grid_n + 1, 0.0);
  const double h = 1.0 / static_cast<double>(grid_n);
  // Simpson over pairs of panels; odd nodes by symmetric half-Simpson split
  for (std::size_t i = 2; i <= grid_n; i += 2)
    cum_[i] = cum_[i - 2] + h / 3.0 * (dens[i - 2] + 4.0 * dens[i - 1] + dens[i]);
  for (std::size_t i = 1; i < grid_n; i += 2) {
    // integrate [x_{i-1}, x_i] with the quadratic through the local triple
    const double f0 = dens[i - 1], f1 = dens[i], f2 = dens[i + 1];
    cum_[i] = cum_[i - 1] + h / 12.0 * (5.0 * f0 + 8.0 * f1 - f2);
  }
  const double z = cum_[grid_n];
  for (auto& c : cum_) c /= z;
  // enforce monotonicity against rounding
  for (std::size_t i = 1; i <= grid_n; ++i) cum_[i] = std::max(cum_[i], cum_[i - 1]);
}

double MixturePosteriorCdf::operator()(double p) const {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  const double x = p * static_cast<double>(grid_n_);
  const std::size_t i = static_cast<std::size_t>(x);
  const double frac = x - static_cast<double>(i);
  return cum_[i] * (1.0 - frac) + cum_[i + 1] * frac;
}

std::vector<double> synthetic_mixture_data(std::size_t n, double w, double mu0, double var0,
                                           double mu1, double var1, std::uint64_t seed) {
  RandomStream stream(seed, 0x0da7a);
  std::vector<double> data(n);
  for (auto& x : data) {
    const bool first = stream.next_double() < w;
    const double z = normal_from_stream(stream);
    x = first ? mu0 + std::sqrt(var0) * z : mu1 + std::sqrt(var1) * z;
  }
  return data;
}

MixtureModel default_mixture_model() {
  return MixtureModel(synthetic_mixture_data(50, 0.33, 3.2, 3.2, 1.4, 1.4, 20050331),
                      3.2, 3.2, 1.4, 1.4);
}

}  // namespace antichain
