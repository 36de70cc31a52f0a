#include "antichain/probit.hpp"

#include <cmath>
#include <stdexcept>

#include "antichain/normal.hpp"

namespace antichain {

const std::vector<LupusCell>& lupus_table() {
  static const std::vector<LupusCell> table = {
      {-3.0, 0.0, 0, 1},
      {-2.5, 0.0, 0, 3},
      {-2.0, 0.0, 0, 7}, {-2.0, 2.0, 0, 1},
      {-1.5, 0.0, 0, 6}, {-1.5, 0.5, 0, 1},
      {-1.0, 0.0, 0, 6}, {-1.0, 0.5, 0, 1}, {-1.0, 1.0, 0, 1}, {-1.0, 2.0, 0, 1},
      {-0.5, 0.0, 0, 4}, {-0.5, 1.5, 1, 1},
      {0.0, 0.0, 0, 3},  {0.0, 1.0, 0, 1},  {0.0, 1.5, 1, 1},
      {0.5, 0.0, 3, 4},  {0.5, 1.0, 1, 1},  {0.5, 1.5, 1, 1}, {0.5, 2.0, 1, 1},
      {1.0, 0.0, 1, 1},  {1.0, 1.0, 1, 1},  {1.0, 1.5, 1, 1}, {1.0, 2.0, 4, 4},
      {1.5, 0.0, 1, 1},  {1.5, 1.5, 2, 2},
  };
  return table;
}

namespace {

// Cholesky of a symmetric positive definite matrix; returns lower L.
Matrix cholesky(const Matrix& s) {
  const std::size_t p = s.rows;
  Matrix l{p, p, std::vector<double>(p * p, 0.0)};
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = s(i, j);
      for (std::size_t r = 0; r < j; ++r) sum -= l(i, r) * l(j, r);
      if (i == j) {
        if (sum <= 0.0) throw std::domain_error("cholesky: matrix not positive definite");
        l(i, i) = std::sqrt(sum);
      } else {
        l(i, j) = sum / l(j, j);
      }
    }
  }
  return l;
}

// Inverse of an SPD matrix via its Cholesky factor.
Matrix spd_inverse(const Matrix& s) {
  const std::size_t p = s.rows;
  Matrix l = cholesky(s);
  // invert L by forward substitution, then S^{-1} = L^{-T} L^{-1}
  Matrix linv{p, p, std::vector<double>(p * p, 0.0)};
  for (std::size_t c = 0; c < p; ++c) {
    linv(c, c) = 1.0 / l(c, c);
    for (std::size_t r = c + 1; r < p; ++r) {
      double sum = 0.0;
      for (std::size_t k = c; k < r; ++k) sum += l(r, k) * linv(k, c);
      linv(r, c) = -sum / l(r, r);
    }
  }
  Matrix inv{p, p, std::vector<double>(p * p, 0.0)};
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      double sum = 0.0;
      for (std::size_t k = std::max(i, j); k < p; ++k) sum += linv(k, i) * linv(k, j);
      inv(i, j) = sum;
    }
  return inv;
}

}  // namespace

ProbitModel::ProbitModel(Matrix design, std::vector<int> outcomes)
    : x_(std::move(design)), y_(std::move(outcomes)) {
  if (x_.rows != y_.size() || x_.rows == 0) throw std::domain_error("ProbitModel: shape mismatch");
  const std::size_t n = x_.rows, p = x_.cols;
  Matrix xtx{p, p, std::vector<double>(p * p, 0.0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = 0; b < p; ++b) xtx(a, b) += x_(i, a) * x_(i, b);
  xtx_inv_ = spd_inverse(xtx);
  chol_ = cholesky(xtx_inv_);
  hat_ = Matrix{p, n, std::vector<double>(p * n, 0.0)};
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t b = 0; b < p; ++b) sum += xtx_inv_(a, b) * x_(i, b);
      hat_(a, i) = sum;
    }
}

std::vector<double> ProbitModel::beta_tilde(std::span<const double> psi) const {
  if (psi.size() != n()) throw std::domain_error("beta_tilde: psi size mismatch");
  std::vector<double> bt(p(), 0.0);
  for (std::size_t a = 0; a < p(); ++a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n(); ++i) sum += hat_(a, i) * psi[i];
    bt[a] = sum;
  }
  return bt;
}

double ProbitModel::eta(std::size_t i, std::span<const double> beta) const {
  double sum = 0.0;
  for (std::size_t a = 0; a < p(); ++a) sum += x_(i, a) * beta[a];
  return sum;
}

ProbitModel lupus_probit_model() {
  std::vector<double> rows;
  std::vector<int> y;
  for (const auto& cell : lupus_table()) {
    for (int i = 0; i < cell.total; ++i) {
      rows.insert(rows.end(), {1.0, cell.igg_diff, cell.iga});
      y.push_back(i < cell.cases ? 1 : 0);
    }
  }
  Matrix x{y.size(), 3, std::move(rows)};
  return ProbitModel(std::move(x), std::move(y));
}

std::vector<double> probit_beta_step(const ProbitState& state, const ProbitModel& model,
                                     std::span<const double> z) {
  if (z.size() != model.p()) throw std::domain_error("probit_beta_step: z size mismatch");
  auto beta = model.beta_tilde(state.psi);
  const Matrix& l = model.chol();
  for (std::size_t a = 0; a < model.p(); ++a) {
    double sum = 0.0;
    for (std::size_t b = 0; b <= a; ++b) sum += l(a, b) * z[b];
    beta[a] += sum;
  }
  return beta;
}

double truncated_normal_inv(double mu, double sigma, int y, double u) {
  if (!(sigma > 0.0)) throw std::domain_error("truncated_normal_inv: sigma must be > 0");
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("truncated_normal_inv: u must be in (0,1)");
  if (y != 0 && y != 1) throw std::domain_error("truncated_normal_inv: y must be 0 or 1");
  // Mass of the admissible half-line, computed without cancellation:
  // y = 1: b = Phi(mu/sigma) = P(Z > 0); the draw is mu - sigma Phi^{-1}(b (1-u)).
  // y = 0: a = Phi(-mu/sigma) = P(Z < 0); the draw is mu + sigma Phi^{-1}(a u).
  // Past |mu/sigma| = 37 the admissible mass underflows; there the
  // conditional law is exponential near the boundary to O(m^{-2}) and the
  // inverse is taken in that form, keeping the sign and the monotonicity
  // in u exact.
  const double m = mu / sigma;
  if (y == 1) {
    if (m < -37.0) return sigma * std::log1p(-u) / m;
    const double b = std_normal_cdf(m);
    const double arg = std::max(b * (1.0 - u), 1e-300);
    return mu - sigma * std_normal_quantile(arg);
  }
  if (m > 37.0) return sigma * std::log(u) / m;
  const double a = std_normal_cdf(-m);
  const double arg = std::max(a * u, 1e-300);
  return mu + sigma * std_normal_quantile(arg);
}

ProbitFit probit_mle(const ProbitModel& model, double tol, int max_iter) {
  const std::size_t n = model.n(), p = model.p();
  std::vector<double> beta(p, 0.0);

  auto nll = [&](const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = model.eta(i, b);
      const double cdf = std_normal_cdf(e);
      const double prob = model.outcomes()[i] == 1 ? cdf : 1.0 - cdf;
      s -= std::log(std::max(prob, 1e-300));
    }
    return s;
  };

  ProbitFit fit;
  Matrix h{p, p, std::vector<double>(p * p, 0.0)};
  std::vector<double> g(p, 0.0);
  for (int it = 0; it < max_iter; ++it) {
    std::fill(g.begin(), g.end(), 0.0);
    std::fill(h.a.begin(), h.a.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double e = model.eta(i, beta);
      const double d = std_normal_pdf(e);
      const double cdf = std::min(std::max(std_normal_cdf(e), 1e-300), 1.0 - 1e-16);
      double score, w;  // observed information weights
      if (model.outcomes()[i] == 1) {
        const double lam = d / cdf;
        score = lam;
        w = lam * (lam + e);
      } else {
        const double lam = d / (1.0 - cdf);
        score = -lam;
        w = lam * (lam - e);
      }
      for (std::size_t a = 0; a < p; ++a) {
        g[a] += score * model.design()(i, a);
        for (std::size_t b = 0; b < p; ++b)
          h(a, b) += w * model.design()(i, a) * model.design()(i, b);
      }
    }
    double gn = 0.0;
    for (double v : g) gn = std::max(gn, std::abs(v));
    fit.grad_norm = gn;
    fit.iterations = it;
    if (gn < tol) break;

    // Newton direction h^{-1} g with step halving on the objective
    Matrix hinv = spd_inverse(h);
    std::vector<double> step(p, 0.0);
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = 0; b < p; ++b) step[a] += hinv(a, b) * g[b];
    const double f0 = nll(beta);
    double t = 1.0;
    std::vector<double> cand(p);
    for (int halving = 0; halving < 60; ++halving) {
      for (std::size_t a = 0; a < p; ++a) cand[a] = beta[a] + t * step[a];
      if (nll(cand) <= f0) break;
      t *= 0.5;
    }
    beta = cand;
  }
  fit.beta = beta;
  Matrix hinv = spd_inverse(h);
  fit.sd.resize(p);
  for (std::size_t a = 0; a < p; ++a) fit.sd[a] = std::sqrt(hinv(a, a));
  return fit;
}

}  // namespace antichain
