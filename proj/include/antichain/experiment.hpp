#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "antichain/generators.hpp"
#include "antichain/mixture.hpp"
#include "antichain/parallel.hpp"
#include "antichain/probit.hpp"
#include "antichain/vrf.hpp"

namespace antichain {

inline constexpr const char* ANTICHAIN_VERSION = "0.1.0";

// One experiment invocation: which sampler, which generator, the sampling
// budget and the reproducibility seed. Round-trips losslessly through JSON.
struct ExperimentConfig {
  std::string experiment = "mixture-cftp";  // mixture-cftp | slice | probit | circle
  GeneratorSpec gen{GeneratorMethod::ILHS, 2, 7};
  std::uint64_t seed = 0;

  // Budget: n = k*m total draws split across the k chains/processes, unless
  // fixed_m pins the per-chain length directly.
  int total_draws = 7500;
  bool fixed_m = false;
  int m_per_chain = 0;

  std::vector<std::string> estimands;  // empty = experiment default

  // mixture data source: "embedded" (the fixed synthetic default),
  // "synthetic" (data_seed/data_n) or a CSV path with a `value` column.
  std::string data = "embedded";
  std::uint64_t data_seed = 20050331;
  int data_n = 50;

  // forward-chain controls
  int replicates = 200;  // independent replicate runs for covariance estimation
  double slice_start = 1.0;
  int burn_in = 0;  // steps discarded before analysis (none by default)

  // probit
  std::string start_strategy = "mle";  // mle | mle2sd | extreme

  // circle
  double tau = 0.0;

  std::int64_t cftp_t_max = std::int64_t{1} << 20;

  bool measure_time = false;  // timing fields are wall-clock, off by default
  std::string out_prefix;     // write CSV/JSON artifacts when nonempty

  nlohmann::ordered_json to_json() const;
  static ExperimentConfig from_json(const nlohmann::ordered_json& j);
};

struct VrfCell {
  std::string estimand;
  std::string method;
  VrfReport report;
};

struct ReportDocument {
  ExperimentConfig config;
  std::vector<VrfCell> cells;
  nlohmann::ordered_json extra;  // ledger stats, posterior means, diagnostics

  nlohmann::ordered_json to_json() const;
  void write(const std::string& prefix) const;  // <prefix>_report.json + <prefix>_vrf.csv
};

ReportDocument run_experiment(const ExperimentConfig& config, ExecMode mode = default_exec_mode());

// --- building blocks reused by tests and the acceptance suite ---

MixtureModel mixture_model_from_config(const ExperimentConfig& config);

struct CftpBatchStats {
  std::int64_t t_final_max = 0;
  double t_final_mean = 0.0;
  std::size_t blocks_total = 0;
};

// m joint CFTP draws of the k-process; returns row-major m x k weights.
std::vector<std::vector<double>> mixture_cftp_draws(const MixtureModel& model,
                                                    const GeneratorSpec& spec, int m,
                                                    std::uint64_t seed, ExecMode mode,
                                                    std::int64_t t_max = std::int64_t{1} << 20,
                                                    CftpBatchStats* stats = nullptr);

// Specialized single-process independent CFTP draw (the tau_1 code path).
double mixture_cftp_independent_draw(const MixtureModel& model, RandomStream stream);

// Forward-coupled slice runs: values[r][j][t] of the raw chain state.
std::vector<std::vector<std::vector<double>>> slice_forward_states(const GeneratorSpec& spec,
                                                                   int replicates, int steps,
                                                                   double start,
                                                                   std::uint64_t seed,
                                                                   ExecMode mode);

// Probit ensemble: per-step beta draws of the k chains.
struct ProbitRun {
  std::vector<std::vector<std::vector<double>>> beta;  // [chain][step][p]
};
ProbitRun run_probit_chains(const ProbitModel& model, const GeneratorSpec& spec,
                            const std::vector<double>& start, int steps, RandomStream stream,
                            bool antithetic);

std::vector<double> probit_start(const ProbitFit& fit, const std::string& strategy);

// Batch-means standard error of the mean of a (possibly autocorrelated)
// series; batch count ~ sqrt(n).
double batch_means_se(const std::vector<double>& series);

}  // namespace antichain
