#include "antichain/vrf.hpp"

#include <cmath>
#include <stdexcept>

namespace antichain {

namespace {

// Pooled S_k on a replicate-by-chain matrix (row-major R x k), plus the
// leave-one-out jackknife SE computed from running sums.
VrfReport pooled_vrf(const std::vector<double>& a, std::size_t r_count, std::size_t k) {
  if (r_count < 2) throw std::domain_error("vrf: need at least 2 replicates");
  if (k < 2) throw std::domain_error("vrf: need k >= 2 chains");

  std::vector<double> s1(k, 0.0);
  std::vector<double> s2(k * k, 0.0);
  for (std::size_t r = 0; r < r_count; ++r)
    for (std::size_t j1 = 0; j1 < k; ++j1) {
      const double x = a[r * k + j1];
      s1[j1] += x;
      for (std::size_t j2 = 0; j2 < k; ++j2) s2[j1 * k + j2] += x * a[r * k + j2];
    }

  auto s_from_sums = [&](const std::vector<double>& m1, const std::vector<double>& m2, double n) {
    double diag = 0.0, off = 0.0;
    for (std::size_t j1 = 0; j1 < k; ++j1)
      for (std::size_t j2 = 0; j2 < k; ++j2) {
        const double cov = (m2[j1 * k + j2] - m1[j1] * m1[j2] / n) / (n - 1.0);
        if (j1 == j2)
          diag += cov;
        else
          off += cov;
      }
    if (diag <= 0.0) throw std::domain_error("vrf: degenerate estimand (zero variance)");
    return 1.0 + off / diag;
  };

  VrfReport rep;
  rep.k = static_cast<int>(k);
  rep.replicates = r_count;
  rep.s_k = s_from_sums(s1, s2, static_cast<double>(r_count));
  rep.rho_hat = (rep.s_k - 1.0) / (static_cast<double>(k) - 1.0);

  // jackknife over replicates
  if (r_count >= 3) {
    std::vector<double> loo(r_count);
    std::vector<double> m1(k), m2(k * k);
    double jack_mean = 0.0;
    for (std::size_t r = 0; r < r_count; ++r) {
      for (std::size_t j1 = 0; j1 < k; ++j1) {
        const double x = a[r * k + j1];
        m1[j1] = s1[j1] - x;
        for (std::size_t j2 = 0; j2 < k; ++j2) m2[j1 * k + j2] = s2[j1 * k + j2] - x * a[r * k + j2];
      }
      loo[r] = s_from_sums(m1, m2, static_cast<double>(r_count - 1));
      jack_mean += loo[r];
    }
    jack_mean /= static_cast<double>(r_count);
    double ss = 0.0;
    for (double v : loo) ss += (v - jack_mean) * (v - jack_mean);
    rep.se_s = std::sqrt(ss * (static_cast<double>(r_count) - 1.0) / static_cast<double>(r_count));
  }
  return rep;
}

}  // namespace

VrfReport vrf_size_fixed(const std::vector<std::vector<double>>& samples) {
  const std::size_t r_count = samples.size();
  if (r_count < 2) throw std::domain_error("vrf_size_fixed: need m >= 2 replicates");
  const std::size_t k = samples.front().size();
  std::vector<double> a(r_count * k);
  double total = 0.0, total2 = 0.0;
  for (std::size_t r = 0; r < r_count; ++r) {
    if (samples[r].size() != k) throw std::domain_error("vrf_size_fixed: ragged sample matrix");
    for (std::size_t j = 0; j < k; ++j) {
      a[r * k + j] = samples[r][j];
      total += samples[r][j];
      total2 += samples[r][j] * samples[r][j];
    }
  }
  VrfReport rep = pooled_vrf(a, r_count, k);
  const double n = static_cast<double>(r_count * k);
  rep.sigma_f2 = (total2 - total * total / n) / (n - 1.0);
  return rep;
}

VrfReport vrf_generalized(const std::vector<std::vector<std::vector<double>>>& values) {
  const std::size_t r_count = values.size();
  if (r_count < 2) throw std::domain_error("vrf_generalized: insufficient replication (need >= 2 runs)");
  const std::size_t k = values.front().size();
  std::vector<double> sums(r_count * k, 0.0);
  double total = 0.0, total2 = 0.0;
  std::size_t count = 0;
  for (std::size_t r = 0; r < r_count; ++r) {
    if (values[r].size() != k) throw std::domain_error("vrf_generalized: ragged chain count");
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (double x : values[r][j]) {
        s += x;
        total += x;
        total2 += x * x;
        ++count;
      }
      sums[r * k + j] = s;
    }
  }
  VrfReport rep = pooled_vrf(sums, r_count, k);
  const double n = static_cast<double>(count);
  rep.sigma_f2 = (total2 - total * total / n) / (n - 1.0);
  return rep;
}

VrfReport vrf_time_fixed(VrfReport report, double tau_k, double tau_1) {
  if (!(tau_k > 0.0) || !(tau_1 > 0.0))
    throw std::domain_error("vrf_time_fixed: timings must be positive");
  report.tau_k = tau_k;
  report.tau_1 = tau_1;
  report.c_k = (tau_k / static_cast<double>(report.k)) / tau_1;
  report.t_k = report.c_k * report.s_k;
  return report;
}

double AutocovEstimates::gamma_at(std::size_t a, std::size_t b, int j) const {
  const std::size_t g = lag_grid.size();
  return gamma[(a * g + b) * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)];
}

double AutocovEstimates::beta_at(std::size_t a, std::size_t b, std::size_t pair) const {
  const std::size_t g = lag_grid.size();
  return beta[(a * g + b) * pair_count + pair];
}

double AutocovEstimates::beta_se_at(std::size_t a, std::size_t b, std::size_t pair) const {
  const std::size_t g = lag_grid.size();
  return beta_se[(a * g + b) * pair_count + pair];
}

double AutocovEstimates::beta_pooled_at(std::size_t a, std::size_t b) const {
  return beta_pooled[a * lag_grid.size() + b];
}

double AutocovEstimates::beta_pooled_se_at(std::size_t a, std::size_t b) const {
  return beta_pooled_se[a * lag_grid.size() + b];
}

namespace {

// covariance across replicates with a leave-one-out jackknife SE
void cov_with_se(const std::vector<double>& x, const std::vector<double>& y, double& cov_out,
                 double& se_out) {
  const std::size_t n = x.size();
  double sx = 0.0, sy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxy += x[i] * y[i];
  }
  const double dn = static_cast<double>(n);
  cov_out = (sxy - sx * sy / dn) / (dn - 1.0);
  double jack_mean = 0.0;
  std::vector<double> loo(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = dn - 1.0;
    loo[i] = ((sxy - x[i] * y[i]) - (sx - x[i]) * (sy - y[i]) / m) / (m - 1.0);
    jack_mean += loo[i];
  }
  jack_mean /= dn;
  double ss = 0.0;
  for (double v : loo) ss += (v - jack_mean) * (v - jack_mean);
  se_out = std::sqrt(ss * (dn - 1.0) / dn);
}

}  // namespace

AutocovEstimates estimate_autocovs(const std::vector<std::vector<std::vector<double>>>& values,
                                   const std::vector<int>& lag_grid) {
  const std::size_t r_count = values.size();
  if (r_count < 100) throw std::domain_error("estimate_autocovs: need >= 100 replicates");
  const std::size_t k = values.front().size();
  const std::size_t m = values.front().front().size();
  for (int t : lag_grid)
    if (t < 0 || static_cast<std::size_t>(t) >= m)
      throw std::domain_error("estimate_autocovs: lag grid exceeds trajectory length");

  AutocovEstimates est;
  est.lag_grid = lag_grid;
  est.k = static_cast<int>(k);
  const std::size_t g = lag_grid.size();
  est.grid_size = g * g;
  est.pair_count = k * (k - 1) / 2;
  est.gamma.assign(g * g * k, 0.0);
  est.gamma_se.assign(g * g * k, 0.0);
  est.beta.assign(g * g * est.pair_count, 0.0);
  est.beta_se.assign(g * g * est.pair_count, 0.0);
  est.beta_pooled.assign(g * g, 0.0);
  est.beta_pooled_se.assign(g * g, 0.0);

  std::vector<double> xa(r_count), xb(r_count);
  std::vector<double> pooled_loo(r_count);
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) {
      const int ta = lag_grid[a], tb = lag_grid[b];
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t r = 0; r < r_count; ++r) {
          xa[r] = values[r][j][static_cast<std::size_t>(ta)];
          xb[r] = values[r][j][static_cast<std::size_t>(tb)];
        }
        cov_with_se(xa, xb, est.gamma[(a * g + b) * k + j], est.gamma_se[(a * g + b) * k + j]);
      }
      std::size_t pair = 0;
      std::fill(pooled_loo.begin(), pooled_loo.end(), 0.0);
      double pooled = 0.0;
      const double dn = static_cast<double>(r_count);
      auto accumulate_orientation = [&](std::size_t j1, std::size_t j2) {
        double sx = 0.0, sy = 0.0, sxy = 0.0;
        for (std::size_t r = 0; r < r_count; ++r) {
          const double x = values[r][j1][static_cast<std::size_t>(ta)];
          const double y = values[r][j2][static_cast<std::size_t>(tb)];
          sx += x;
          sy += y;
          sxy += x * y;
        }
        pooled += (sxy - sx * sy / dn) / (dn - 1.0);
        for (std::size_t r = 0; r < r_count; ++r) {
          const double x = values[r][j1][static_cast<std::size_t>(ta)];
          const double y = values[r][j2][static_cast<std::size_t>(tb)];
          pooled_loo[r] +=
              ((sxy - x * y) - (sx - x) * (sy - y) / (dn - 1.0)) / (dn - 2.0);
        }
      };
      for (std::size_t j1 = 0; j1 < k; ++j1)
        for (std::size_t j2 = j1 + 1; j2 < k; ++j2, ++pair) {
          double c1, s1, c2, s2;
          for (std::size_t r = 0; r < r_count; ++r) {
            xa[r] = values[r][j1][static_cast<std::size_t>(ta)];
            xb[r] = values[r][j2][static_cast<std::size_t>(tb)];
          }
          cov_with_se(xa, xb, c1, s1);
          for (std::size_t r = 0; r < r_count; ++r) {
            xa[r] = values[r][j2][static_cast<std::size_t>(ta)];
            xb[r] = values[r][j1][static_cast<std::size_t>(tb)];
          }
          cov_with_se(xa, xb, c2, s2);
          est.beta[(a * g + b) * est.pair_count + pair] = 0.5 * (c1 + c2);
          est.beta_se[(a * g + b) * est.pair_count + pair] = 0.5 * std::sqrt(s1 * s1 + s2 * s2);
          accumulate_orientation(j1, j2);
          accumulate_orientation(j2, j1);
        }
      const double n_terms = static_cast<double>(2 * est.pair_count);
      est.beta_pooled[a * g + b] = pooled / n_terms;
      double jack_mean = 0.0;
      for (std::size_t r = 0; r < r_count; ++r) {
        pooled_loo[r] /= n_terms;
        jack_mean += pooled_loo[r];
      }
      jack_mean /= dn;
      double ss = 0.0;
      for (std::size_t r = 0; r < r_count; ++r)
        ss += (pooled_loo[r] - jack_mean) * (pooled_loo[r] - jack_mean);
      est.beta_pooled_se[a * g + b] = std::sqrt(ss * (dn - 1.0) / dn);
    }
  return est;
}

}  // namespace antichain
