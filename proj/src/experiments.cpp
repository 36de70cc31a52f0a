#include "antichain/experiment.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "antichain/cftp.hpp"
#include "antichain/circle.hpp"
#include "antichain/csv.hpp"
#include "antichain/estimands.hpp"
#include "antichain/forward.hpp"
#include "antichain/normal.hpp"
#include "antichain/slice.hpp"
#include "antichain/stats.hpp"
#include "antichain/timing.hpp"

namespace antichain {

using nlohmann::ordered_json;

ordered_json ExperimentConfig::to_json() const {
  ordered_json j;
  j["experiment"] = experiment;
  j["method"] = method_name(gen.method);
  j["k"] = gen.k;
  j["ilhs_iterations"] = gen.ilhs_iterations;
  j["seed"] = seed;
  j["total_draws"] = total_draws;
  j["fixed_m"] = fixed_m;
  j["m_per_chain"] = m_per_chain;
  j["estimands"] = estimands;
  j["data"] = data;
  j["data_seed"] = data_seed;
  j["data_n"] = data_n;
  j["replicates"] = replicates;
  j["slice_start"] = slice_start;
  j["burn_in"] = burn_in;
  j["start_strategy"] = start_strategy;
  j["tau"] = tau;
  j["cftp_t_max"] = cftp_t_max;
  j["measure_time"] = measure_time;
  j["out_prefix"] = out_prefix;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const ordered_json& j) {
  ExperimentConfig c;
  c.experiment = j.at("experiment").get<std::string>();
  c.gen.method = method_from_name(j.at("method").get<std::string>());
  c.gen.k = j.at("k").get<int>();
  c.gen.ilhs_iterations = j.at("ilhs_iterations").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.total_draws = j.at("total_draws").get<int>();
  c.fixed_m = j.at("fixed_m").get<bool>();
  c.m_per_chain = j.at("m_per_chain").get<int>();
  c.estimands = j.at("estimands").get<std::vector<std::string>>();
  c.data = j.at("data").get<std::string>();
  c.data_seed = j.at("data_seed").get<std::uint64_t>();
  c.data_n = j.at("data_n").get<int>();
  c.replicates = j.at("replicates").get<int>();
  c.slice_start = j.at("slice_start").get<double>();
  c.burn_in = j.at("burn_in").get<int>();
  c.start_strategy = j.at("start_strategy").get<std::string>();
  c.tau = j.at("tau").get<double>();
  c.cftp_t_max = j.at("cftp_t_max").get<std::int64_t>();
  c.measure_time = j.at("measure_time").get<bool>();
  c.out_prefix = j.at("out_prefix").get<std::string>();
  return c;
}

ordered_json ReportDocument::to_json() const {
  ordered_json j;
  j["version"] = ANTICHAIN_VERSION;
  j["seed"] = config.seed;
  j["config"] = config.to_json();
  ordered_json cell_array = ordered_json::array();
  for (const auto& cell : cells) {
    ordered_json c;
    c["estimand"] = cell.estimand;
    c["method"] = cell.method;
    c["k"] = cell.report.k;
    c["replicates"] = cell.report.replicates;
    c["rho_hat"] = cell.report.rho_hat;
    c["s_k"] = cell.report.s_k;
    c["se_s"] = cell.report.se_s;
    c["sigma_f2"] = cell.report.sigma_f2;
    c["c_k"] = cell.report.c_k;
    c["t_k"] = cell.report.t_k;
    c["tau_k"] = cell.report.tau_k;
    c["tau_1"] = cell.report.tau_1;
    cell_array.push_back(c);
  }
  j["cells"] = cell_array;
  j["extra"] = extra;
  return j;
}

void ReportDocument::write(const std::string& prefix) const {
  std::ofstream out(prefix + "_report.json");
  out << to_json().dump(2) << "\n";

  CsvTable vrf;
  vrf.header = {"k", "estimand", "method", "s_k", "se", "c_k", "t_k"};
  for (const auto& cell : cells)
    vrf.rows.push_back({std::to_string(cell.report.k), cell.estimand, cell.method,
                        format_double(cell.report.s_k), format_double(cell.report.se_s),
                        format_double(cell.report.c_k), format_double(cell.report.t_k)});
  write_csv(prefix + "_vrf.csv", vrf);
}

MixtureModel mixture_model_from_config(const ExperimentConfig& config) {
  if (config.data == "embedded") return default_mixture_model();
  if (config.data == "synthetic")
    return MixtureModel(synthetic_mixture_data(static_cast<std::size_t>(config.data_n), 0.33, 3.2,
                                               3.2, 1.4, 1.4, config.data_seed),
                        3.2, 3.2, 1.4, 1.4);
  CsvTable table = read_csv(config.data);
  const std::size_t col = table.column("value");
  std::vector<double> data;
  data.reserve(table.rows.size());
  long line = 1;
  for (const auto& row : table.rows) data.push_back(parse_double_field(row[col], ++line));
  return MixtureModel(std::move(data), 3.2, 3.2, 1.4, 1.4);
}

namespace {

struct MixtureCoalesced {
  bool operator()(const MixtureState& a, const MixtureState& b) const {
    return coalescence_test_mixture(a, b);
  }
};

MixtureState mixture_bottom(const MixtureModel&) { return {0.0, {}, 0}; }
MixtureState mixture_top(const MixtureModel& m) {
  return {1.0, std::vector<std::uint8_t>(m.n(), 0), m.n()};
}

}  // namespace

std::vector<std::vector<double>> mixture_cftp_draws(const MixtureModel& model,
                                                    const GeneratorSpec& spec, int m,
                                                    std::uint64_t seed, ExecMode mode,
                                                    std::int64_t t_max, CftpBatchStats* stats) {
  const int n_scalars = static_cast<int>(2 * model.n() + 2);
  std::vector<std::vector<double>> draws(static_cast<std::size_t>(m));
  std::vector<std::int64_t> t_finals(static_cast<std::size_t>(m), 0);
  std::vector<std::size_t> blocks(static_cast<std::size_t>(m), 0);
  RandomStream root(seed, 0xCF7 + spec.k);
  CftpConfig config;
  config.t_max = t_max;
  auto step = [&model](const MixtureState& s, std::span<const double> u) {
    return mixture_cftp_step(s, u, model);
  };
  // exceptions cannot unwind an OpenMP region; collect and rethrow after
  std::vector<std::unique_ptr<non_coalescence_error>> failures(static_cast<std::size_t>(m));
  par_for(m, mode, [&](std::int64_t r) {
    RandomnessLedger ledger(root.split(static_cast<std::uint64_t>(r)), spec, n_scalars);
    try {
      auto result = run_cftp_k_processes<MixtureState, decltype(step), MixtureCoalesced>(
          step, mixture_bottom(model), mixture_top(model), ledger, config);
      std::vector<double> row(static_cast<std::size_t>(spec.k));
      for (int j = 0; j < spec.k; ++j)
        row[static_cast<std::size_t>(j)] = result.draws[static_cast<std::size_t>(j)].state.p;
      draws[static_cast<std::size_t>(r)] = std::move(row);
      t_finals[static_cast<std::size_t>(r)] = result.t_final_max;
      blocks[static_cast<std::size_t>(r)] = result.blocks_materialized;
    } catch (const non_coalescence_error& e) {
      failures[static_cast<std::size_t>(r)] = std::make_unique<non_coalescence_error>(e);
    }
  });
  for (auto& f : failures)
    if (f) throw *f;
  if (stats) {
    stats->t_final_max = 0;
    stats->blocks_total = 0;
    double sum = 0.0;
    for (int r = 0; r < m; ++r) {
      stats->t_final_max = std::max(stats->t_final_max, t_finals[static_cast<std::size_t>(r)]);
      stats->blocks_total += blocks[static_cast<std::size_t>(r)];
      sum += static_cast<double>(t_finals[static_cast<std::size_t>(r)]);
    }
    stats->t_final_mean = sum / m;
  }
  return draws;
}

double mixture_cftp_independent_draw(const MixtureModel& model, RandomStream stream) {
  const int n_scalars = static_cast<int>(2 * model.n() + 2);
  RandomnessLedger ledger(stream, {GeneratorMethod::Independent, 1, 0}, n_scalars);
  auto step = [&model](const MixtureState& s, std::span<const double> u) {
    return mixture_cftp_step(s, u, model);
  };
  auto draw = run_cftp_single_process<MixtureState, decltype(step), MixtureCoalesced>(
      step, mixture_bottom(model), mixture_top(model), ledger, 0);
  return draw.state.p;
}

std::vector<std::vector<std::vector<double>>> slice_forward_states(const GeneratorSpec& spec,
                                                                   int replicates, int steps,
                                                                   double start,
                                                                   std::uint64_t seed,
                                                                   ExecMode mode) {
  std::vector<std::vector<std::vector<double>>> states(static_cast<std::size_t>(replicates));
  RandomStream root(seed, 0x51ce + spec.k);
  auto update = [](double x, std::span<const double> u) { return slice_update(x, u[0], u[1]); };
  par_for(replicates, mode, [&](std::int64_t r) {
    auto traj = run_forward_coupled<double>(update, std::vector<double>(static_cast<std::size_t>(spec.k), start),
                                            spec, 2, steps, root.split(static_cast<std::uint64_t>(r)));
    auto& rep = states[static_cast<std::size_t>(r)];
    rep.resize(static_cast<std::size_t>(spec.k));
    for (int j = 0; j < spec.k; ++j) {
      rep[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(steps));
      for (int t = 0; t < steps; ++t) rep[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] = traj.at(j, t);
    }
  });
  return states;
}

ProbitRun run_probit_chains(const ProbitModel& model, const GeneratorSpec& spec,
                            const std::vector<double>& start, int steps, RandomStream stream,
                            bool antithetic) {
  const int k = spec.k;
  const std::size_t n = model.n(), p = model.p();
  ProbitRun run;
  run.beta.assign(static_cast<std::size_t>(k),
                  std::vector<std::vector<double>>(static_cast<std::size_t>(steps)));
  std::vector<ProbitState> chains(static_cast<std::size_t>(k));
  for (auto& c : chains) {
    c.beta = start;
    c.psi.assign(n, 0.0);
  }
  std::vector<double> utuple(static_cast<std::size_t>(k));
  std::vector<double> z(static_cast<std::size_t>(k) * p);
  const GeneratorSpec iid{GeneratorMethod::Independent, k, 0};
  for (int t = 0; t < steps; ++t) {
    // (ii) psi_i | beta, y_i, one NA k-tuple per observation
    for (std::size_t i = 0; i < n; ++i) {
      draw_uniform_tuple(stream, antithetic ? spec : iid, utuple);
      for (int j = 0; j < k; ++j) {
        auto& c = chains[static_cast<std::size_t>(j)];
        c.psi[i] = truncated_normal_inv(model.eta(i, c.beta), 1.0, model.outcomes()[i],
                                        utuple[static_cast<std::size_t>(j)]);
      }
    }
    // (i) beta | psi, one NA normal k-tuple per coordinate
    for (std::size_t a = 0; a < p; ++a) {
      if (antithetic) {
        NormalTuple zt = normal_na_tuple(stream, k);
        for (int j = 0; j < k; ++j) z[static_cast<std::size_t>(j) * p + a] = zt.values[static_cast<std::size_t>(j)];
      } else {
        for (int j = 0; j < k; ++j) z[static_cast<std::size_t>(j) * p + a] = normal_from_stream(stream);
      }
    }
    for (int j = 0; j < k; ++j) {
      auto& c = chains[static_cast<std::size_t>(j)];
      c.beta = probit_beta_step(c, model, std::span<const double>(z.data() + static_cast<std::size_t>(j) * p, p));
      run.beta[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] = c.beta;
    }
  }
  return run;
}

std::vector<double> probit_start(const ProbitFit& fit, const std::string& strategy) {
  std::vector<double> start = fit.beta;
  if (strategy == "mle") return start;
  if (strategy == "mle2sd") {
    start[0] += 2.0 * fit.sd[0];
    for (std::size_t i = 1; i < start.size(); ++i) start[i] -= 2.0 * fit.sd[i];
    return start;
  }
  if (strategy == "extreme") {
    start[0] += 3.5 * fit.sd[0];
    for (std::size_t i = 1; i < start.size(); ++i) start[i] -= 3.5 * fit.sd[i];
    return start;
  }
  throw std::domain_error("unknown start strategy: " + strategy);
}

double batch_means_se(const std::vector<double>& series) {
  const std::size_t n = series.size();
  if (n < 16) throw std::domain_error("batch_means_se: series too short");
  const std::size_t n_batches = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  const std::size_t len = n / n_batches;
  std::vector<double> means;
  means.reserve(n_batches);
  for (std::size_t b = 0; b < n_batches; ++b) {
    double s = 0.0;
    for (std::size_t i = b * len; i < (b + 1) * len; ++i) s += series[i];
    means.push_back(s / static_cast<double>(len));
  }
  return std::sqrt(variance(means) / static_cast<double>(n_batches));
}

namespace {

int per_chain_steps(const ExperimentConfig& config) {
  if (config.fixed_m) {
    if (config.m_per_chain < 1) throw std::domain_error("m_per_chain must be >= 1 in fixed-m mode");
    return config.m_per_chain;
  }
  // the budget n = k*m is held exactly
  if (config.total_draws < config.gen.k || config.total_draws % config.gen.k != 0)
    throw std::domain_error("total_draws must be a positive multiple of k (or use fixed-m mode)");
  return config.total_draws / config.gen.k;
}

std::vector<ScalarEstimand> resolve_scalar_estimands(const ExperimentConfig& config) {
  std::vector<std::string> names = config.estimands;
  if (names.empty()) names = {"identity"};
  std::vector<ScalarEstimand> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(scalar_estimand_by_name(n));
  return out;
}

void write_draw_trajectories(const std::string& path,
                             const std::vector<std::vector<double>>& draws) {
  CsvTable t;
  t.header = {"rep", "chain", "step", "state"};
  for (std::size_t r = 0; r < draws.size(); ++r)
    for (std::size_t j = 0; j < draws[r].size(); ++j)
      t.rows.push_back({std::to_string(r), std::to_string(j), "0", format_double(draws[r][j])});
  write_csv(path, t);
}

ReportDocument run_mixture_cftp(const ExperimentConfig& config, ExecMode mode) {
  ReportDocument doc;
  doc.config = config;
  const MixtureModel model = mixture_model_from_config(config);
  const int m = per_chain_steps(config);
  const auto estimands = resolve_scalar_estimands(config);

  const GeneratorSpec control{GeneratorMethod::Independent, config.gen.k, 0};
  CftpBatchStats anti_stats, ctrl_stats;
  auto anti = mixture_cftp_draws(model, config.gen, m, config.seed, mode, config.cftp_t_max,
                                 &anti_stats);
  auto ctrl = mixture_cftp_draws(model, control, m, config.seed + 1, mode, config.cftp_t_max,
                                 &ctrl_stats);

  double tau_k = 0.0, tau_1 = 0.0;
  if (config.measure_time) {
    RandomStream tstream(config.seed, 0x71AE);
    const int batch = 64;
    tau_k = median_time_seconds([&] {
              mixture_cftp_draws(model, config.gen, batch, tstream.next_u64(), ExecMode::Serial);
            }) / batch;
    tau_1 = median_time_seconds([&] {
              for (int i = 0; i < batch; ++i)
                mixture_cftp_independent_draw(model, RandomStream(tstream.next_u64(), 1));
            }) / batch;
  }

  auto add_cells = [&](const std::vector<std::vector<double>>& draws, const std::string& method) {
    for (const auto& est : estimands) {
      std::vector<std::vector<double>> f_values(draws.size());
      for (std::size_t r = 0; r < draws.size(); ++r) {
        f_values[r].reserve(draws[r].size());
        for (double p : draws[r]) f_values[r].push_back(est.f(p));
      }
      VrfReport rep = vrf_size_fixed(f_values);
      if (config.measure_time && method != "independent") rep = vrf_time_fixed(rep, tau_k, tau_1);
      doc.cells.push_back({est.name, method, rep});
    }
  };
  add_cells(anti, method_name(config.gen.method));
  add_cells(ctrl, "independent");

  doc.extra["sampler"] = "hrt-mixture-cftp";
  doc.extra["data_n"] = model.n();
  doc.extra["joint_draws"] = m;
  doc.extra["ledger"] = {{"t_final_max", anti_stats.t_final_max},
                         {"t_final_mean", anti_stats.t_final_mean},
                         {"blocks_total", anti_stats.blocks_total},
                         {"control_t_final_max", ctrl_stats.t_final_max}};
  if (!config.out_prefix.empty())
    write_draw_trajectories(config.out_prefix + "_trajectories.csv", anti);
  return doc;
}

ReportDocument run_slice(const ExperimentConfig& config, ExecMode mode) {
  ReportDocument doc;
  doc.config = config;
  const int steps = per_chain_steps(config);
  const auto estimands = resolve_scalar_estimands(config);
  const GeneratorSpec control{GeneratorMethod::Independent, config.gen.k, 0};

  auto anti = slice_forward_states(config.gen, config.replicates, steps + config.burn_in,
                                   config.slice_start, config.seed, mode);
  auto ctrl = slice_forward_states(control, config.replicates, steps + config.burn_in,
                                   config.slice_start, config.seed + 1, mode);
  if (config.burn_in > 0) {
    for (auto* states : {&anti, &ctrl})
      for (auto& rep : *states)
        for (auto& chain : rep)
          chain.erase(chain.begin(), chain.begin() + config.burn_in);
  }

  double tau_k = 0.0, tau_1 = 0.0;
  if (config.measure_time) {
    const int batch = 20000;
    RandomStream tstream(config.seed, 0x71AE);
    tau_k = median_time_seconds([&] {
              RandomStream s = tstream.split(1);
              std::vector<double> x(static_cast<std::size_t>(config.gen.k), config.slice_start);
              std::vector<double> tup(static_cast<std::size_t>(config.gen.k));
              for (int t = 0; t < batch; ++t) {
                draw_uniform_tuple(s, config.gen, tup);
                std::vector<double> tup2(tup.size());
                draw_uniform_tuple(s, config.gen, tup2);
                for (int j = 0; j < config.gen.k; ++j) {
                  auto sj = static_cast<std::size_t>(j);
                  x[sj] = slice_update(x[sj], tup[sj], tup2[sj]);
                }
              }
            }) / batch;
    tau_1 = median_time_seconds([&] {
              RandomStream s = tstream.split(2);
              double x = config.slice_start;
              for (int t = 0; t < batch; ++t) x = slice_update(x, s.next_open01(), s.next_open01());
            }) / batch;
  }

  auto add_cells = [&](const std::vector<std::vector<std::vector<double>>>& states,
                       const std::string& method) {
    for (const auto& est : estimands) {
      auto values = states;
      for (auto& rep : values)
        for (auto& chain : rep)
          for (auto& x : chain) x = est.f(x);
      VrfReport rep = vrf_generalized(values);
      if (config.measure_time && method != "independent") rep = vrf_time_fixed(rep, tau_k, tau_1);
      doc.cells.push_back({est.name, method, rep});
    }
  };
  add_cells(anti, method_name(config.gen.method));
  add_cells(ctrl, "independent");

  doc.extra["sampler"] = "slice";
  doc.extra["steps_per_chain"] = steps;
  if (!config.out_prefix.empty()) {
    CsvTable t;
    t.header = {"rep", "chain", "step", "state"};
    for (const auto& est : estimands) t.header.push_back(est.name);
    for (std::size_t r = 0; r < anti.size(); ++r)
      for (std::size_t j = 0; j < anti[r].size(); ++j)
        for (std::size_t s = 0; s < anti[r][j].size(); ++s) {
          std::vector<std::string> row = {std::to_string(r), std::to_string(j), std::to_string(s),
                                          format_double(anti[r][j][s])};
          for (const auto& est : estimands) row.push_back(format_double(est.f(anti[r][j][s])));
          t.rows.push_back(std::move(row));
        }
    write_csv(config.out_prefix + "_trajectories.csv", t);
  }
  return doc;
}

ReportDocument run_probit(const ExperimentConfig& config, ExecMode mode) {
  ReportDocument doc;
  doc.config = config;
  const ProbitModel model = lupus_probit_model();
  const ProbitFit fit = probit_mle(model);
  const auto start = probit_start(fit, config.start_strategy);
  const int steps = per_chain_steps(config);
  const int k = config.gen.k;

  const auto& registry = probit_estimand_registry();
  std::vector<VectorEstimand> estimands;
  if (config.estimands.empty()) {
    estimands = registry;
  } else {
    for (const auto& name : config.estimands) {
      bool found = false;
      for (const auto& e : registry)
        if (e.name == name) {
          estimands.push_back(e);
          found = true;
        }
      if (!found) throw std::domain_error("unknown probit estimand: " + name);
    }
  }

  // replicate ensembles (for covariance estimation across replicates)
  const int reps = std::max(config.replicates, 2);
  std::vector<ProbitRun> anti(static_cast<std::size_t>(reps)), ctrl(static_cast<std::size_t>(reps));
  RandomStream root(config.seed, 0x9B17);
  par_for(reps, mode, [&](std::int64_t r) {
    anti[static_cast<std::size_t>(r)] = run_probit_chains(
        model, config.gen, start, steps + config.burn_in, root.split(2 * static_cast<std::uint64_t>(r)), true);
    ctrl[static_cast<std::size_t>(r)] = run_probit_chains(
        model, config.gen, start, steps + config.burn_in, root.split(2 * static_cast<std::uint64_t>(r) + 1), false);
  });
  if (config.burn_in > 0)
    for (auto* runs : {&anti, &ctrl})
      for (auto& run : *runs)
        for (auto& chain : run.beta)
          chain.erase(chain.begin(), chain.begin() + config.burn_in);

  auto add_cells = [&](const std::vector<ProbitRun>& runs, const std::string& method) {
    for (const auto& est : estimands) {
      std::vector<std::vector<std::vector<double>>> values(runs.size());
      for (std::size_t r = 0; r < runs.size(); ++r) {
        values[r].resize(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) {
          auto& series = values[r][static_cast<std::size_t>(j)];
          series.reserve(static_cast<std::size_t>(steps));
          for (const auto& b : runs[r].beta[static_cast<std::size_t>(j)]) series.push_back(est.f(b));
        }
      }
      doc.cells.push_back({est.name, method, vrf_generalized(values)});
    }
  };
  add_cells(anti, method_name(config.gen.method));
  add_cells(ctrl, "independent");

  // posterior means from the first antithetic ensemble (one ensemble of k
  // chains; no burn-in discarded unless configured)
  ordered_json means;
  for (const auto& est : estimands) {
    std::vector<double> ensemble;
    ensemble.reserve(static_cast<std::size_t>(steps));
    for (int t = 0; t < steps; ++t) {
      double s = 0.0;
      for (int j = 0; j < k; ++j)
        s += est.f(anti[0].beta[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)]);
      ensemble.push_back(s / k);
    }
    ordered_json m;
    m["mean"] = mean(ensemble);
    m["se"] = batch_means_se(ensemble);
    means[est.name] = m;
  }
  doc.extra["posterior"] = means;
  doc.extra["mle"] = fit.beta;
  doc.extra["mle_sd"] = fit.sd;
  doc.extra["start"] = start;
  doc.extra["steps_per_chain"] = steps;

  if (!config.out_prefix.empty()) {
    CsvTable t;
    t.header = {"rep", "chain", "step", "state"};
    for (const auto& est : estimands) t.header.push_back(est.name);
    for (std::size_t r = 0; r < anti.size() && r < 4; ++r)
      for (int j = 0; j < k; ++j)
        for (int s = 0; s < steps; ++s) {
          const auto& b = anti[r].beta[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)];
          std::vector<std::string> row = {std::to_string(r), std::to_string(j), std::to_string(s),
                                          format_double(b[0])};
          for (const auto& est : estimands) row.push_back(format_double(est.f(b)));
          t.rows.push_back(std::move(row));
        }
    write_csv(config.out_prefix + "_trajectories.csv", t);
  }
  return doc;
}

ReportDocument run_circle(const ExperimentConfig& config, ExecMode) {
  ReportDocument doc;
  doc.config = config;
  const int steps = config.fixed_m && config.m_per_chain > 0 ? config.m_per_chain
                                                             : config.total_draws;
  CircleState s = circle_start(config.tau);
  RandomStream stream(config.seed, 0xC19C);
  std::vector<double> cx, cy;
  cx.reserve(static_cast<std::size_t>(steps));
  cy.reserve(static_cast<std::size_t>(steps));
  const double tau0 = circle_tau(s);
  double max_drift = 0.0;
  for (int t = 0; t < steps; ++t) {
    s = circle_update(s, stream.next_double() * std::numbers::pi);
    cx.push_back(std::cos(s.theta_x));
    cy.push_back(std::cos(s.theta_y));
    max_drift = std::max(max_drift, std::abs(circle_tau(s) - tau0));
  }
  const double corr = pearson_corr(cx, cy);
  // i.i.d. pairs across steps, so the plain large-sample correlation SE applies
  const double se = (1.0 - corr * corr) / std::sqrt(static_cast<double>(steps));

  VrfReport rep;
  rep.k = 2;
  rep.replicates = static_cast<std::size_t>(steps);
  rep.rho_hat = corr;
  rep.s_k = 1.0 + corr;
  rep.se_s = se;
  doc.cells.push_back({"cos", "circle", rep});
  doc.extra["tau"] = config.tau;
  doc.extra["corr"] = corr;
  doc.extra["corr_se"] = se;
  doc.extra["corr_theory"] = -std::cos(2.0 * config.tau);
  doc.extra["tau_max_drift"] = max_drift;
  return doc;
}

}  // namespace

ReportDocument run_experiment(const ExperimentConfig& config, ExecMode mode) {
  config.gen.validate();
  ReportDocument doc;
  if (config.experiment == "mixture-cftp")
    doc = run_mixture_cftp(config, mode);
  else if (config.experiment == "slice")
    doc = run_slice(config, mode);
  else if (config.experiment == "probit")
    doc = run_probit(config, mode);
  else if (config.experiment == "circle")
    doc = run_circle(config, mode);
  else
    throw std::domain_error("unknown experiment: " + config.experiment);
  if (!config.out_prefix.empty()) doc.write(config.out_prefix);
  return doc;
}

}  // namespace antichain
