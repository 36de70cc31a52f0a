#include <doctest.h>

#include <cmath>
#include <numbers>

#include "antichain/circle.hpp"
#include "antichain/experiment.hpp"
#include "antichain/mixture.hpp"
#include "antichain/normal.hpp"
#include "antichain/probit.hpp"
#include "antichain/random.hpp"
#include "antichain/slice.hpp"
#include "antichain/stats.hpp"
#include "test_util.hpp"

using namespace antichain;
using namespace testutil;

TEST_SUITE("slice") {
  TEST_CASE("boundary hand values") {
    CHECK(slice_update(0.0, 1.0 - 1e-12, 1e-12) < 1e-9);
    const double xi2 = 1.0 - std::exp(-(std::numbers::e - 1.0));
    CHECK(std::abs(slice_update(0.0, 1.0 - 1e-15, xi2) - 1.0) < 1e-9);
    CHECK_THROWS_AS((void)slice_update(0.0, 0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS((void)slice_update(0.0, 0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS((void)slice_update(-0.1, 0.5, 0.5), std::domain_error);
  }

  TEST_CASE("monotone in every argument") {
    RandomStream s(101, 0);
    for (int rep = 0; rep < 10000; ++rep) {
      const double x = 3.0 * s.next_double();
      const double a = s.next_open01(), b = s.next_open01();
      const double base = slice_update(x, a, b);
      const double dx = s.next_double();
      CHECK(slice_update(x + dx, a, b) >= base);
      const double da = (1.0 - a) * s.next_double() * 0.999;
      CHECK(slice_update(x, a + da, b) >= base);
      const double db = (1.0 - b) * s.next_double() * 0.999;
      CHECK(slice_update(x, a, b + db) >= base);
      CHECK(base >= 0.0);
    }
  }

  TEST_CASE("long-run marginal matches the quadrature CDF") {
    RandomStream s(103, 0);
    SliceCdf cdf;
    double x = 1.0;
    // short burn-in, then thin by 2
    for (int i = 0; i < 100; ++i) x = slice_update(x, s.next_open01(), s.next_open01());
    std::vector<double> draws;
    draws.reserve(100000);
    for (int i = 0; i < 100000; ++i) {
      x = slice_update(x, s.next_open01(), s.next_open01());
      x = slice_update(x, s.next_open01(), s.next_open01());
      draws.push_back(x);
    }
    CHECK(ks_statistic(draws, [&](double v) { return cdf(v); }) < 0.02);
  }
}

TEST_SUITE("mixture") {
  TEST_CASE("indicator step at the degenerate weights") {
    MixtureModel model(synthetic_mixture_data(20, 0.33, 3.2, 3.2, 1.4, 1.4, 1), 3.2, 3.2, 1.4, 1.4);
    RandomStream s(107, 0);
    std::vector<double> u(20);
    for (auto& v : u) v = s.next_open01();
    std::vector<std::uint8_t> z;
    std::size_t m = 0;
    mixture_indicator_step(1.0, u, model, z, m);
    CHECK(m == 20);
    mixture_indicator_step(0.0, u, model, z, m);
    CHECK(m == 0);
  }

  TEST_CASE("indicator count is nondecreasing in p") {
    MixtureModel model(synthetic_mixture_data(30, 0.33, 3.2, 3.2, 1.4, 1.4, 2), 3.2, 3.2, 1.4, 1.4);
    RandomStream s(109, 0);
    std::vector<double> u(30);
    std::vector<std::uint8_t> z;
    for (int rep = 0; rep < 1000; ++rep) {
      for (auto& v : u) v = s.next_open01();
      double p1 = s.next_double(), p2 = s.next_double();
      if (p1 > p2) std::swap(p1, p2);
      std::size_t m1 = 0, m2 = 0;
      mixture_indicator_step(p1, u, model, z, m1);
      mixture_indicator_step(p2, u, model, z, m2);
      CHECK(m1 <= m2);
    }
  }

  TEST_CASE("weight update: deterministic ratios and errors") {
    std::vector<double> w(12, 1.0);  // n = 10
    CHECK(mixture_p_update(10, w) == doctest::Approx(11.0 / 12.0));
    CHECK(mixture_p_update(0, w) == doctest::Approx(1.0 / 12.0));
    w[3] = 0.0;
    CHECK_THROWS_AS((void)mixture_p_update(0, w), std::domain_error);
  }

  TEST_CASE("weight update is Beta(m+1, n-m+1) in law") {
    RandomStream s(113, 0);
    const int n = 10, m = 3;
    std::vector<double> draws;
    draws.reserve(100000);
    std::vector<double> w(n + 2);
    for (int rep = 0; rep < 100000; ++rep) {
      for (auto& v : w) v = exp_from_uniform(s.next_open01());
      draws.push_back(mixture_p_update(m, w));
    }
    CHECK(ks_statistic(draws, [](double x) { return beta_cdf_int(x, m + 1, n - m + 1); }) < 0.02);
  }

  TEST_CASE("psi is nondecreasing in p and collapses when z's agree") {
    MixtureModel model(synthetic_mixture_data(25, 0.33, 3.2, 3.2, 1.4, 1.4, 3), 3.2, 3.2, 1.4, 1.4);
    RandomStream s(127, 0);
    std::vector<double> u(25), w(27);
    for (int rep = 0; rep < 10000; ++rep) {
      for (auto& v : u) v = s.next_open01();
      for (auto& v : w) v = exp_from_uniform(s.next_open01());
      CHECK(mixture_psi(0.0, u, w, model) <= mixture_psi(1.0, u, w, model));
    }
    // equal z-vectors force bit-identical outputs
    std::vector<std::uint8_t> z0, z1;
    std::size_t m0 = 0, m1 = 0;
    for (int rep = 0; rep < 1000; ++rep) {
      for (auto& v : u) v = s.next_open01();
      for (auto& v : w) v = exp_from_uniform(s.next_open01());
      mixture_indicator_step(0.4, u, model, z0, m0);
      mixture_indicator_step(0.6, u, model, z1, m1);
      if (z0 == z1) CHECK(mixture_psi(0.4, u, w, model) == mixture_psi(0.6, u, w, model));
    }
  }

  TEST_CASE("flat posterior with no data") {
    MixtureModel empty({}, 3.2, 3.2, 1.4, 1.4);
    CHECK(mixture_posterior_density(0.3, empty) == 1.0);
    RandomStream s(131, 0);
    std::vector<double> draws;
    std::vector<double> w(2);
    for (int i = 0; i < 20000; ++i) {
      w[0] = exp_from_uniform(s.next_open01());
      w[1] = exp_from_uniform(s.next_open01());
      draws.push_back(mixture_p_update(0, w));
    }
    CHECK(ks_statistic(draws, [](double x) { return x; }) < 0.02);
  }

  TEST_CASE("posterior density: noninformative single datum, quadrature self-consistency") {
    MixtureModel same({1.7}, 2.0, 1.5, 2.0, 1.5);
    CHECK(mixture_posterior_density(0.1, same) == doctest::Approx(mixture_posterior_density(0.9, same)));

    MixtureModel model(synthetic_mixture_data(40, 0.33, 3.2, 3.2, 1.4, 1.4, 4), 3.2, 3.2, 1.4, 1.4);
    MixturePosteriorCdf coarse(model, 10000), fine(model, 20000);
    CHECK(coarse(1.0) == 1.0);
    double max_diff = 0.0;
    for (int i = 0; i <= 100; ++i)
      max_diff = std::max(max_diff, std::abs(coarse(i / 100.0) - fine(i / 100.0)));
    CHECK(max_diff < 1e-8);
  }
}

TEST_SUITE("probit") {
  TEST_CASE("lupus dataset checksums") {
    int cases = 0, total = 0;
    bool found_cell = false;
    for (const auto& cell : lupus_table()) {
      cases += cell.cases;
      total += cell.total;
      if (cell.igg_diff == 1.0 && cell.iga == 2.0) {
        found_cell = true;
        CHECK(cell.cases == 4);
        CHECK(cell.total == 4);
      }
    }
    CHECK(cases == 18);
    CHECK(total == 55);
    CHECK(found_cell);

    const ProbitModel model = lupus_probit_model();
    CHECK(model.n() == 55);
    CHECK(model.p() == 3);
  }

  TEST_CASE("precomputed operators satisfy their identities") {
    const ProbitModel model = lupus_probit_model();
    const auto& inv = model.xtx_inv();
    const auto& l = model.chol();
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        double ll = 0.0;
        for (std::size_t r = 0; r < 3; ++r) ll += l(i, r) * l(j, r);
        CHECK(std::abs(ll - inv(i, j)) < 1e-10);
      }
    // hat * X = (X'X)^{-1} X'X = I
    double max_err = 0.0;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < model.n(); ++i) s += model.hat()(a, i) * model.design()(i, b);
        max_err = std::max(max_err, std::abs(s - (a == b ? 1.0 : 0.0)));
      }
    CHECK(max_err < 1e-10);
  }

  TEST_CASE("beta step: conditional mean, antipodal coupling, covariance oracle") {
    const ProbitModel model = lupus_probit_model();
    RandomStream s(137, 0);
    ProbitState state;
    state.psi.resize(55);
    for (auto& v : state.psi) v = normal_from_stream(s);

    const auto bt = model.beta_tilde(state.psi);
    const std::vector<double> z0 = {0.0, 0.0, 0.0};
    CHECK(probit_beta_step(state, model, z0) == bt);

    std::vector<double> z = {0.3, -1.2, 0.7}, zneg = {-0.3, 1.2, -0.7};
    auto b1 = probit_beta_step(state, model, z);
    auto b2 = probit_beta_step(state, model, zneg);
    for (int a = 0; a < 3; ++a)
      CHECK(b1[static_cast<std::size_t>(a)] + b2[static_cast<std::size_t>(a)] ==
            doctest::Approx(2.0 * bt[static_cast<std::size_t>(a)]).epsilon(1e-12));

    CHECK_THROWS_AS((void)probit_beta_step(state, model, std::vector<double>{1.0}), std::domain_error);

    const int n = 100000;
    std::vector<std::vector<double>> draws(3, std::vector<double>(n));
    std::vector<double> zv(3);
    for (int i = 0; i < n; ++i) {
      for (auto& v : zv) v = normal_from_stream(s);
      auto b = probit_beta_step(state, model, zv);
      for (int a = 0; a < 3; ++a) draws[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(a)];
    }
    const auto& inv = model.xtx_inv();
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        double cov = 0.0;
        const double mi = mean(draws[i]), mj = mean(draws[j]);
        for (int r = 0; r < n; ++r)
          cov += (draws[i][static_cast<std::size_t>(r)] - mi) * (draws[j][static_cast<std::size_t>(r)] - mj);
        cov /= n - 1.0;
        const double se = std::sqrt((inv(i, i) * inv(j, j) + inv(i, j) * inv(i, j)) / n);
        CHECK(std::abs(cov - inv(i, j)) < 3.0 * se);
      }
  }

  TEST_CASE("truncated normal: hand value, boundaries, sign, monotonicity") {
    CHECK(truncated_normal_inv(0.0, 1.0, 1, 0.5) ==
          doctest::Approx(std_normal_quantile(0.75)).epsilon(1e-12));
    const double near_zero = truncated_normal_inv(0.0, 1.0, 1, 1e-12);
    CHECK(near_zero > 0.0);
    CHECK(near_zero < 1e-9);
    CHECK_THROWS_AS((void)truncated_normal_inv(0.0, 1.0, 1, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)truncated_normal_inv(0.0, 0.0, 1, 0.5), std::domain_error);
    CHECK_THROWS_AS((void)truncated_normal_inv(0.0, 1.0, 2, 0.5), std::domain_error);

    RandomStream s(139, 0);
    for (int rep = 0; rep < 20000; ++rep) {
      const double mu = 40.0 * (s.next_double() - 0.5);
      const double sigma = 0.1 + 3.0 * s.next_double();
      const double u = s.next_open01();
      CHECK(truncated_normal_inv(mu, sigma, 1, u) > 0.0);
      CHECK(truncated_normal_inv(mu, sigma, 0, u) < 0.0);
    }
    for (int rep = 0; rep < 5000; ++rep) {
      const double mu = 6.0 * (s.next_double() - 0.5);
      double u1 = s.next_open01(), u2 = s.next_open01();
      if (u1 > u2) std::swap(u1, u2);
      CHECK(truncated_normal_inv(mu, 1.0, 1, u1) <= truncated_normal_inv(mu, 1.0, 1, u2));
      CHECK(truncated_normal_inv(mu, 1.0, 0, u1) <= truncated_normal_inv(mu, 1.0, 0, u2));
    }
  }

  TEST_CASE("truncated normal distribution at mu = -1") {
    RandomStream s(149, 0);
    std::vector<double> draws;
    draws.reserve(100000);
    for (int i = 0; i < 100000; ++i) draws.push_back(truncated_normal_inv(-1.0, 1.0, 1, s.next_open01()));
    // analytic CDF of N(-1,1) truncated to (0, inf)
    const double z0 = std_normal_cdf(1.0);
    auto cdf = [z0](double x) {
      if (x <= 0.0) return 0.0;
      return (std_normal_cdf(x + 1.0) - z0) / (1.0 - z0);
    };
    CHECK(ks_statistic(draws, cdf) < 0.02);
  }

  TEST_CASE("Gibbs composition keeps every psi sign aligned with its outcome") {
    const ProbitModel model = lupus_probit_model();
    const ProbitFit fit = probit_mle(model);
    RandomStream s(141, 0);
    ProbitState state;
    state.beta = probit_start(fit, "extreme");
    state.psi.assign(model.n(), 0.0);
    for (int step = 0; step < 200; ++step) {
      for (std::size_t i = 0; i < model.n(); ++i)
        state.psi[i] = truncated_normal_inv(model.eta(i, state.beta), 1.0, model.outcomes()[i],
                                            s.next_open01());
      for (std::size_t i = 0; i < model.n(); ++i)
        REQUIRE((model.outcomes()[i] == 1) == (state.psi[i] > 0.0));
      std::vector<double> z(model.p());
      for (auto& v : z) v = normal_from_stream(s);
      state.beta = probit_beta_step(state, model, z);
    }
  }

  TEST_CASE("damped Newton MLE converges on the lupus data") {
    const ProbitModel model = lupus_probit_model();
    const ProbitFit fit = probit_mle(model);
    CHECK(fit.grad_norm < 1e-10);
    CHECK(std::abs(fit.beta[0] - (-1.77748863)) < 1e-4);
    CHECK(std::abs(fit.beta[1] - 4.37388201) < 1e-4);
    CHECK(std::abs(fit.beta[2] - 2.42832147) < 1e-4);
    CHECK(std::abs(fit.sd[0] - 1.1733) < 1e-3);
    CHECK(std::abs(fit.sd[1] - 2.2926) < 1e-3);
    CHECK(std::abs(fit.sd[2] - 1.4993) < 1e-3);
  }
}

TEST_SUITE("circle") {
  TEST_CASE("update hand values") {
    CircleState s{0.0, 0.0};
    auto r = circle_update(s, std::numbers::pi / 2.0);
    CHECK(std::abs(r.theta_x - 0.0) < 1e-15);

    CircleState eq{1.1, 1.1};
    auto r2 = circle_update(eq, 0.0);
    CHECK(r2.theta_x == doctest::Approx(std::numbers::pi - 1.1));
    CHECK_THROWS_AS((void)circle_update(s, std::numbers::pi), std::domain_error);
  }

  TEST_CASE("tau recovery across branches") {
    CircleState a{0.4, std::numbers::pi - 0.4};
    CHECK(circle_tau(a) == doctest::Approx(0.0).epsilon(1e-12));
    CircleState b{std::numbers::pi, std::numbers::pi / 2.0};
    CHECK(circle_tau(b) == doctest::Approx(std::numbers::pi / 4.0));
  }

  TEST_CASE("tau is conserved to 1e-9 over 1000 steps") {
    RandomStream s(151, 0);
    for (double tau : {0.0, 0.3, std::numbers::pi / 4.0, 1.2}) {
      CircleState state = circle_start(tau);
      for (int t = 0; t < 1000; ++t) {
        state = circle_update(state, s.next_double() * std::numbers::pi);
        CHECK(std::abs(circle_tau(state) - tau) < 1e-9);
      }
    }
  }

  TEST_CASE("marginal of theta_x is uniform on [0, 2pi)") {
    RandomStream s(157, 0);
    CircleState state = circle_start(0.7);
    std::vector<double> draws;
    draws.reserve(100000);
    for (int t = 0; t < 100000; ++t) {
      state = circle_update(state, s.next_double() * std::numbers::pi);
      draws.push_back(state.theta_x);
    }
    CHECK(ks_statistic(draws, [](double x) { return x / (2.0 * std::numbers::pi); }) < 0.02);
  }

  TEST_CASE("joint correlation equals -cos(2 tau)") {
    RandomStream s(163, 0);
    const double tau = std::numbers::pi / 8.0;
    CircleState state = circle_start(tau);
    const int n = 40000;
    std::vector<double> cx, cy;
    for (int t = 0; t < n; ++t) {
      state = circle_update(state, s.next_double() * std::numbers::pi);
      cx.push_back(std::cos(state.theta_x));
      cy.push_back(std::cos(state.theta_y));
    }
    const double r = pearson_corr(cx, cy);
    const double target = -std::cos(2.0 * tau);
    CHECK(std::abs(r - target) < 3.0 * corr_se(target, n));
  }
}
