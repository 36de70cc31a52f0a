#include <doctest.h>

#include <atomic>

#include "antichain/experiment.hpp"
#include "antichain/ilhs_cdf.hpp"
#include "antichain/mixture.hpp"
#include "antichain/parallel.hpp"
#include "antichain/stats.hpp"

using namespace antichain;

// Every OpenMP kernel has a serial twin; iterations own disjoint slots and
// private streams, so both modes must produce identical bytes.

TEST_SUITE("parallel") {
  TEST_CASE("par_for covers the range exactly once in both modes") {
    for (ExecMode mode : {ExecMode::Serial, ExecMode::OpenMP}) {
      std::vector<std::atomic<int>> hits(997);
      par_for(997, mode, [&](std::int64_t i) { hits[static_cast<std::size_t>(i)]++; });
      for (const auto& h : hits) CHECK(h.load() == 1);
    }
  }

  TEST_CASE("mixture CFTP draws are mode-invariant") {
    MixtureModel model(synthetic_mixture_data(15, 0.33, 3.2, 3.2, 1.4, 1.4, 5), 3.2, 3.2, 1.4, 1.4);
    const GeneratorSpec spec{GeneratorMethod::ILHS, 3, 7};
    auto serial = mixture_cftp_draws(model, spec, 200, 401, ExecMode::Serial);
    auto parallel = mixture_cftp_draws(model, spec, 200, 401, ExecMode::OpenMP);
    CHECK(serial == parallel);
  }

  TEST_CASE("slice forward states are mode-invariant") {
    const GeneratorSpec spec{GeneratorMethod::ILHS, 4, 7};
    auto serial = slice_forward_states(spec, 120, 30, 1.0, 403, ExecMode::Serial);
    auto parallel = slice_forward_states(spec, 120, 30, 1.0, 403, ExecMode::OpenMP);
    CHECK(serial == parallel);
  }

  TEST_CASE("grid scans are mode-invariant") {
    const ExactIlhsCdf cdf(3, 2);
    CHECK(hoeffding_corr_from_cdf(cdf, 200, ExecMode::Serial) ==
          hoeffding_corr_from_cdf(cdf, 200, ExecMode::OpenMP));
    auto a = ks_distance_bound_check(3, 1, 2, 150, ExecMode::Serial);
    auto b = ks_distance_bound_check(3, 1, 2, 150, ExecMode::OpenMP);
    CHECK(a.d_observed == b.d_observed);
  }

  TEST_CASE("orthant diagnostics are mode-invariant") {
    RandomStream s(405, 0);
    std::vector<double> samples(30000);
    for (auto& x : samples) x = s.next_double();
    std::vector<double> grid = {0.2, 0.5, 0.8};
    auto a = nlod_nuod_check(samples, 3, grid, ExecMode::Serial);
    auto b = nlod_nuod_check(samples, 3, grid, ExecMode::OpenMP);
    CHECK(a.max_nlod_excess == b.max_nlod_excess);
    CHECK(a.max_nuod_excess == b.max_nuod_excess);
  }

  TEST_CASE("experiment reports are mode-invariant") {
    ExperimentConfig config;
    config.experiment = "mixture-cftp";
    config.gen = {GeneratorMethod::ILHS, 3, 7};
    config.total_draws = 600;
    config.seed = 77;
    config.data = "synthetic";
    config.data_n = 12;
    auto a = run_experiment(config, ExecMode::Serial);
    auto b = run_experiment(config, ExecMode::OpenMP);
    CHECK(a.to_json() == b.to_json());
  }
}
