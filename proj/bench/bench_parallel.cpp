// Compares the serial reference kernels against their OpenMP twins and
// reports the measured cost ratio C_k = (tau_k / k) / tau_1 for the joint
// generators. All numbers are wall-clock and machine-specific.

#include <cstdio>

#include "antichain/experiment.hpp"
#include "antichain/generators.hpp"
#include "antichain/ilhs_cdf.hpp"
#include "antichain/mixture.hpp"
#include "antichain/parallel.hpp"
#include "antichain/random.hpp"
#include "antichain/timing.hpp"

using namespace antichain;

namespace {

void report(const char* name, double serial_s, double omp_s) {
  std::printf("%-34s serial %9.4fs   omp %9.4fs   speedup %.2fx\n", name, serial_s, omp_s,
              serial_s / omp_s);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", hardware_threads());

  {
    const int n = 200000, k = 5;
    const GeneratorSpec spec{GeneratorMethod::ILHS, k, 7};
    auto batch = [&](ExecMode mode) {
      std::vector<double> out(static_cast<std::size_t>(n) * k);
      RandomStream root(1, 0);
      par_for(n, mode, [&](std::int64_t i) {
        RandomStream s = root.split(static_cast<std::uint64_t>(i));
        draw_uniform_tuple(s, spec, std::span<double>(out.data() + i * k, k));
      });
      return out[0];
    };
    const double ts = median_time_seconds([&] { batch(ExecMode::Serial); }, 5);
    const double tp = median_time_seconds([&] { batch(ExecMode::OpenMP); }, 5);
    report("ilhs(7) k=5 tuple batch 2e5", ts, tp);
  }

  {
    const MixtureModel model = default_mixture_model();
    const GeneratorSpec spec{GeneratorMethod::ILHS, 4, 7};
    const double ts =
        median_time_seconds([&] { mixture_cftp_draws(model, spec, 300, 1, ExecMode::Serial); }, 5);
    const double tp =
        median_time_seconds([&] { mixture_cftp_draws(model, spec, 300, 1, ExecMode::OpenMP); }, 5);
    report("mixture CFTP k=4, 300 joint draws", ts, tp);
  }

  {
    const GeneratorSpec spec{GeneratorMethod::ILHS, 5, 7};
    const double ts = median_time_seconds(
        [&] { slice_forward_states(spec, 400, 50, 1.0, 2, ExecMode::Serial); }, 5);
    const double tp = median_time_seconds(
        [&] { slice_forward_states(spec, 400, 50, 1.0, 2, ExecMode::OpenMP); }, 5);
    report("slice forward k=5, 400 x 50", ts, tp);
  }

  {
    const ExactIlhsCdf cdf(3, 3);
    const double ts =
        median_time_seconds([&] { hoeffding_corr_from_cdf(cdf, 400, ExecMode::Serial); }, 5);
    const double tp =
        median_time_seconds([&] { hoeffding_corr_from_cdf(cdf, 400, ExecMode::OpenMP); }, 5);
    report("hoeffding 401x401 grid (k=3,t=3)", ts, tp);
  }

  std::printf("\njoint-draw cost ratios C_k = (tau_k/k)/tau_1, uniform tuples (n = 2e5):\n");
  {
    const int n = 200000;
    RandomStream s(9, 9);
    std::vector<double> sink(64);
    const double tau_1 = median_time_seconds([&] {
                           double acc = 0.0;
                           for (int i = 0; i < n; ++i) acc += s.next_open01();
                           sink[0] = acc;
                         }, 7) / n;
    for (int k : {2, 5, 10}) {
      for (GeneratorMethod m : {GeneratorMethod::PD, GeneratorMethod::NormalNA, GeneratorMethod::ILHS}) {
        const GeneratorSpec spec{m, k, 7};
        const double tau_k = median_time_seconds([&] {
                               for (int i = 0; i < n / k; ++i)
                                 draw_uniform_tuple(s, spec, std::span<double>(sink.data(), static_cast<std::size_t>(k)));
                             }, 7) / (n / k);
        std::printf("  %-8s k=%-3d tau_k=%8.1f ns  C_k=%6.2f\n", method_name(m).c_str(), k,
                    tau_k * 1e9, (tau_k / k) / tau_1);
      }
    }
  }
  return 0;
}
