#include <doctest.h>

#include <cmath>
#include <numbers>

#include "antichain/errors.hpp"
#include "antichain/generators.hpp"
#include "antichain/ilhs_cdf.hpp"
#include "antichain/normal.hpp"
#include "antichain/random.hpp"
#include "antichain/stats.hpp"
#include "antichain/theory.hpp"
#include "antichain/vrf.hpp"
#include "test_util.hpp"

using namespace antichain;
using namespace testutil;

TEST_SUITE("vrf") {
  TEST_CASE("uncorrelated columns give S = 1, perfect antithesis gives 0") {
    std::vector<std::vector<double>> orth = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    CHECK(vrf_size_fixed(orth).s_k == doctest::Approx(1.0));

    RandomStream s(301, 0);
    std::vector<std::vector<double>> anti;
    for (int i = 0; i < 1000; ++i) {
      const double v = s.next_double();
      anti.push_back({v, -v});
    }
    CHECK(vrf_size_fixed(anti).s_k == doctest::Approx(0.0).epsilon(1e-12));

    std::vector<std::vector<double>> pairs;
    for (int i = 0; i < 5000; ++i) {
      const double u = s.next_open01();
      pairs.push_back({u, 1.0 - u});
    }
    VrfReport rep = vrf_size_fixed(pairs);
    CHECK(std::abs(rep.s_k) < 3.0 * std::max(rep.se_s, 1e-12) + 1e-12);
    CHECK(rep.s_k == doctest::Approx(1.0 + rep.rho_hat).epsilon(1e-12));
  }

  TEST_CASE("degenerate estimand and insufficient replication raise") {
    std::vector<std::vector<double>> flat = {{1.0, 1.0}, {1.0, 1.0}};
    CHECK_THROWS_AS((void)vrf_size_fixed(flat), std::domain_error);
    CHECK_THROWS_AS((void)vrf_generalized({{{1.0}}}), std::domain_error);
  }

  TEST_CASE("one-step chains reduce to the size-fixed estimator bit for bit") {
    RandomStream s(303, 0);
    std::vector<std::vector<double>> flatd;
    std::vector<std::vector<std::vector<double>>> nested;
    for (int r = 0; r < 500; ++r) {
      std::vector<double> row = {s.next_double(), s.next_double(), s.next_double()};
      flatd.push_back(row);
      nested.push_back({{row[0]}, {row[1]}, {row[2]}});
    }
    VrfReport a = vrf_size_fixed(flatd);
    VrfReport b = vrf_generalized(nested);
    CHECK(a.s_k == b.s_k);
    CHECK(a.rho_hat == b.rho_hat);
    CHECK(a.se_s == b.se_s);
    CHECK(a.sigma_f2 == b.sigma_f2);
  }

  TEST_CASE("independent chains give S = 1 within noise") {
    RandomStream s(307, 0);
    std::vector<std::vector<std::vector<double>>> values(300);
    for (auto& rep : values) {
      rep.resize(3);
      for (auto& chain : rep) {
        chain.resize(10);
        double x = 0.0;
        for (auto& v : chain) {
          x = 0.5 * x + s.next_double();
          v = x;
        }
      }
    }
    VrfReport rep = vrf_generalized(values);
    CHECK(std::abs(rep.s_k - 1.0) < 3.0 * rep.se_s);
  }

  TEST_CASE("time-fixed arithmetic") {
    VrfReport rep;
    rep.k = 4;
    rep.s_k = 0.4;
    VrfReport neutral = vrf_time_fixed(rep, 4.0 * 0.001, 0.001);
    CHECK(neutral.c_k == doctest::Approx(1.0));
    CHECK(neutral.t_k == doctest::Approx(0.4));
    VrfReport doubled = vrf_time_fixed(rep, 8.0 * 0.001, 0.001);
    CHECK(doubled.c_k == doctest::Approx(2.0));
    CHECK(doubled.t_k == doctest::Approx(0.8));
    CHECK_THROWS_AS((void)vrf_time_fixed(rep, 0.0, 1.0), std::domain_error);
  }

  TEST_CASE("autocovariances vanish for iid data") {
    RandomStream s(311, 0);
    std::vector<std::vector<std::vector<double>>> values(200);
    for (auto& rep : values) {
      rep.resize(2);
      for (auto& chain : rep) {
        chain.resize(8);
        for (auto& v : chain) v = normal_from_stream(s);
      }
    }
    auto est = estimate_autocovs(values, {0, 3, 7});
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) {
        for (int j = 0; j < 2; ++j)
          if (a != b)
            CHECK(std::abs(est.gamma_at(a, b, j)) <
                  3.0 * est.gamma_se[(a * 3 + b) * 2 + static_cast<std::size_t>(j)]);
        CHECK(std::abs(est.beta_at(a, b, 0)) < 3.0 * est.beta_se_at(a, b, 0));
      }
    CHECK(est.gamma_at(0, 0, 0) > 0.0);
    CHECK_THROWS_AS((void)estimate_autocovs({{{1.0}}}, {0}), std::domain_error);
  }
}

TEST_SUITE("ilhs_cdf") {
  TEST_CASE("hand values and global properties") {
    CHECK(ilhs_joint_cdf_exact(0.5, 0.5, 2, 1) == 0.0);
    CHECK(ilhs_joint_cdf_exact(0.25, 0.75, 2, 1) == doctest::Approx(0.125).epsilon(1e-15));
    for (int t = 0; t <= 8; ++t) CHECK(ilhs_joint_cdf_exact(1.0, 1.0, 3, t) == doctest::Approx(1.0));
    CHECK(ilhs_joint_cdf_exact(0.3, 0.8, 3, 2) == ilhs_joint_cdf_exact(0.8, 0.3, 3, 2));
    CHECK(ilhs_joint_cdf_exact(0.0, 0.9, 4, 3) == 0.0);
    CHECK_THROWS_AS((void)ilhs_joint_cdf_exact(1.1, 0.5, 2, 1), std::domain_error);
    CHECK_THROWS_AS((void)ilhs_joint_cdf_exact(0.5, 0.5, 1, 1), std::domain_error);
  }

  TEST_CASE("NQD and monotone decrease on a grid") {
    for (int k : {2, 3}) {
      for (int i = 0; i <= 50; ++i)
        for (int j = 0; j <= 50; ++j) {
          const double u = i / 50.0, v = j / 50.0;
          double prev = u * v;
          for (int t = 1; t <= 5; ++t) {
            const double f = ilhs_joint_cdf_exact(u, v, k, t);
            CHECK(f <= prev + 1e-12);
            CHECK(f <= u * v + 1e-12);
            CHECK(f <= std::min(u, v) + 1e-12);
            prev = f;
          }
        }
    }
  }

  TEST_CASE("diagonal is t-invariant") {
    for (int k : {2, 3, 5})
      for (int i = 1; i < 40; ++i) {
        const double c = i / 40.0;
        const double f1 = ilhs_joint_cdf_exact(c, c, k, 1);
        for (int t = 2; t <= 8; ++t) CHECK(ilhs_joint_cdf_exact(c, c, k, t) == f1);
      }
  }

  TEST_CASE("closed-form correlation") {
    CHECK(ilhs_corr_theory(3, 1) == doctest::Approx(-4.0 / 9.0).epsilon(1e-15));
    CHECK(ilhs_corr_theory(5, 0) == 0.0);
    CHECK(ilhs_corr_theory(2, 40) == doctest::Approx(-1.0));
  }

  TEST_CASE("Hoeffding quadrature agrees with the closed form") {
    CHECK(std::abs(hoeffding_corr_from_cdf(ExactIlhsCdf(3, 0))) < 1e-6);
    CHECK(std::abs(hoeffding_corr_from_cdf(ExactIlhsCdf(2, 1)) - (-0.75)) < 1e-5);
    CHECK(std::abs(hoeffding_corr_from_cdf(ExactIlhsCdf(3, 2)) - ilhs_corr_theory(3, 2)) < 1e-5);
  }

  TEST_CASE("refinement KS-distance bound") {
    CHECK(thm7_bound(3, 5) == doctest::Approx(std::pow(3.0, -4.0) * std::pow(2.0, -7.0)));
    CHECK(thm7_bound(3, 5) < 1e-4);
    auto report = ks_distance_bound_check(3, 2, 3, 200);
    CHECK(report.within_bound);
    CHECK(report.d_observed <= report.bound);
  }
}

TEST_SUITE("theory") {
  TEST_CASE("indicator VRF closed form and the exact-CDF route agree") {
    CHECK(indicator_vrf_uniform(0.5, 2) == 0.0);
    CHECK(indicator_vrf_uniform(0.3, 2) == doctest::Approx(4.0 / 7.0).epsilon(1e-15));
    for (int k : {2, 3, 5})
      for (int i = 1; i < 20; ++i) {
        const double c = i / 20.0;
        const double via_cdf =
            1.0 + (k - 1.0) * (ilhs_joint_cdf_exact(c, c, k, 1) - c * c) / (c * (1.0 - c));
        CHECK(indicator_vrf_uniform(c, k) == doctest::Approx(via_cdf).epsilon(1e-12));
      }
    CHECK_THROWS_AS((void)indicator_vrf_uniform(0.0, 3), std::domain_error);
  }

  TEST_CASE("interior maximum: anchors and grid agreement") {
    TheoryRow r3 = indicator_vrf_max(3);
    CHECK(r3.s_star == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(r3.c_star_low == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(indicator_vrf_max(1000000).s_star - s_star_limit()) < 1e-3);
    for (int k : {3, 5, 7, 20}) {
      TheoryRow row = indicator_vrf_max(k);
      CHECK(std::abs(row.grid_maximizer - row.c_star_low) < 1e-9);
      CHECK(std::abs(row.grid_max_value - row.s_star) < 1e-9);
    }
    CHECK_THROWS_AS((void)indicator_vrf_max(2), std::domain_error);
  }

  TEST_CASE("theory-row invariants: range of S_k*, monotone gain") {
    double prev_r = 0.0;
    for (int k = 3; k <= 200; ++k) {
      TheoryRow row{};
      row.s_star = indicator_vrf_max(k).s_star;
      CHECK(row.s_star > 0.17);
      CHECK(row.s_star <= 1.0 / 3.0 + 1e-15);
      const double r = relative_gain(k);
      CHECK(r >= prev_r);
      prev_r = r;
    }
  }

  TEST_CASE("k_alpha reproduces the published thresholds") {
    CHECK(k_alpha(0.50) == 5);
    CHECK(k_alpha(0.60) == 6);
    CHECK(k_alpha(0.70) == 7);
    CHECK(k_alpha(0.80) == 9);
    CHECK(k_alpha(0.90) == 17);
    CHECK(k_alpha(0.95) == 32);
    CHECK(k_alpha(0.99) == 152);
    CHECK(k_alpha(1e-9) == 4);  // R_3 = 0, first positive gain is k = 4
    CHECK_THROWS_AS((void)k_alpha(0.0), std::domain_error);
  }

  TEST_CASE("grade correlation quadrature: endpoints and the arcsine identity") {
    CHECK(normal_pair_uniform_corr(0.0) == 0.0);
    CHECK(std::abs(normal_pair_uniform_corr(-1.0) - (-1.0)) < 1e-10);
    CHECK(std::abs(normal_pair_uniform_corr(1.0) - 1.0) < 1e-10);
    for (double rho = -1.0; rho <= 1.0; rho += 0.125) {
      const double arcsine = (6.0 / std::numbers::pi) * std::asin(rho / 2.0);
      CHECK(std::abs(normal_pair_uniform_corr(rho) - arcsine) < 1e-9);
    }
  }

  TEST_CASE("cubic series is within its truncation budget for |rho| <= 0.5") {
    for (double rho = -0.5; rho <= 0.5; rho += 0.05)
      CHECK(std::abs(normal_pair_uniform_corr(rho) - normal_pair_uniform_corr_series(rho)) < 5e-4);
  }

  TEST_CASE("normal indicator VRF anchors") {
    CHECK(indicator_vrf_normal(0.0, 2) == 0.0);
    CHECK(std::abs(normal_joint_cdf(9.0, 5) - 1.0) < 1e-9);
    CHECK(std::abs(indicator_vrf_normal(0.0, 10000) - (1.0 - 2.0 / std::numbers::pi)) < 1e-3);
    // symmetric in c -> -c by the two-sided construction
    CHECK(indicator_vrf_normal(0.7, 6) == doctest::Approx(indicator_vrf_normal(-0.7, 6)).epsilon(1e-7));
  }

  TEST_CASE("circle correlation law") {
    CHECK(circle_corr_theory(0.0) == -1.0);
    CHECK(std::abs(circle_corr_theory(std::numbers::pi / 4.0)) < 1e-15);
    CHECK(circle_corr_theory(std::numbers::pi / 2.0) == doctest::Approx(1.0));
  }

  TEST_CASE("empirical ILHS indicator VRF matches the closed form") {
    RandomStream s(313, 0);
    const int n = 60000, k = 5;
    const double c = 0.4;
    std::vector<std::vector<double>> f_vals;
    f_vals.reserve(n);
    for (int i = 0; i < n; ++i) {
      auto t = ilhs_tuple(s, k, 7);
      std::vector<double> row(k);
      for (int j = 0; j < k; ++j) row[static_cast<std::size_t>(j)] = t.values[static_cast<std::size_t>(j)] <= c ? 1.0 : 0.0;
      f_vals.push_back(std::move(row));
    }
    VrfReport rep = vrf_size_fixed(f_vals);
    CHECK(std::abs(rep.s_k - indicator_vrf_uniform(c, k)) < 3.0 * rep.se_s);
  }

  TEST_CASE("oracle triangle: theory, Hoeffding quadrature, Monte Carlo") {
    RandomStream s(317, 0);
    const int k = 3, t = 2, n = 50000;
    const double theory = ilhs_corr_theory(k, t);
    const double hoeff = hoeffding_corr_from_cdf(ExactIlhsCdf(k, t));
    CHECK(std::abs(hoeff - theory) < 1e-5);
    auto tuples = draw_tuples(n, [&] { return ilhs_tuple(s, k, t).values; });
    auto est = tuple_corr(tuples);
    CHECK(std::abs(est.corr - theory) < 3.0 * est.se);
    CHECK(std::abs(est.corr - hoeff) < 3.0 * est.se);
  }
}
