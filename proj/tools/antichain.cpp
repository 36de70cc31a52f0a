// antichain: negatively associated k-tuple generators, antithetically
// coupled forward/backward MCMC, and the closed-form analysis tables.
//
// Subcommands: generate, experiment, theory, analyze, dataset.
// Exit codes: 0 success, 2 usage, 3 numerical/coalescence failure, 4 parse
// failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "antichain/csv.hpp"
#include "antichain/errors.hpp"
#include "antichain/estimands.hpp"
#include "antichain/experiment.hpp"
#include "antichain/generators.hpp"
#include "antichain/ilhs_cdf.hpp"
#include "antichain/probit.hpp"
#include "antichain/stats.hpp"
#include "antichain/theory.hpp"
#include "antichain/vrf.hpp"

using namespace antichain;

namespace {

std::uint64_t resolve_seed(bool seed_given, std::uint64_t seed_flag) {
  if (seed_given) return seed_flag;
  if (const char* env = std::getenv("ANTICHAIN_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw parse_error(std::string("ANTICHAIN_SEED is not an integer: ") + env);
    }
  }
  std::random_device rd;
  std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::printf("seed (generated): %llu\n", static_cast<unsigned long long>(seed));
  return seed;
}

int cmd_generate(const std::string& method, int k, int t, int n, bool seed_given,
                 std::uint64_t seed_flag, const std::string& out, const std::string& format) {
  GeneratorSpec spec{method_from_name(method), k, t};
  spec.validate();
  const std::uint64_t seed = resolve_seed(seed_given, seed_flag);
  RandomStream stream(seed, 0x6E);

  std::vector<std::vector<double>> tuples(static_cast<std::size_t>(n));
  for (auto& row : tuples) {
    row.resize(static_cast<std::size_t>(k));
    draw_uniform_tuple(stream, spec, row);
  }

  CsvTable table;
  table.header = {"rep", "coord", "value"};
  for (std::size_t r = 0; r < tuples.size(); ++r)
    for (int c = 0; c < k; ++c)
      table.rows.push_back({std::to_string(r), std::to_string(c),
                            format_double(tuples[r][static_cast<std::size_t>(c)])});
  if (!out.empty()) write_table(out, table, format);

  double total = 0.0;
  for (const auto& row : tuples)
    for (double v : row) total += v;
  std::printf("method=%s k=%d t=%d n=%d seed=%llu\n", method.c_str(), k, t, n,
              static_cast<unsigned long long>(seed));
  std::printf("mean=%.6f\n", total / (static_cast<double>(n) * k));
  if (n >= 3 && k >= 2) {
    VrfReport rep = vrf_size_fixed(tuples);
    std::printf("pairwise_corr=%.6f se=%.6f (s_k=%.6f)\n", rep.rho_hat,
                rep.se_s / (k - 1.0), rep.s_k);
  }
  if (!out.empty()) std::printf("wrote %s\n", out.c_str());
  return 0;
}

int cmd_experiment(ExperimentConfig config, bool seed_given, const std::string& config_out) {
  config.seed = resolve_seed(seed_given, config.seed);
  ReportDocument doc = run_experiment(config);
  if (!config_out.empty()) {
    std::ofstream out(config_out);
    out << config.to_json().dump(2) << "\n";
  }
  std::printf("%-12s %-14s %-12s %10s %10s %8s %8s\n", "k", "estimand", "method", "s_k", "se",
              "c_k", "t_k");
  for (const auto& cell : doc.cells)
    std::printf("%-12d %-14s %-12s %10.4f %10.4f %8.3f %8.3f\n", cell.report.k,
                cell.estimand.c_str(), cell.method.c_str(), cell.report.s_k, cell.report.se_s,
                cell.report.c_k, cell.report.t_k);
  if (doc.extra.contains("posterior")) {
    std::printf("posterior means (ensemble %d x %d):\n", config.gen.k,
                doc.extra["steps_per_chain"].get<int>());
    for (auto& [name, v] : doc.extra["posterior"].items())
      std::printf("  %-10s %12.6f  (se %.6f)\n", name.c_str(), v["mean"].get<double>(),
                  v["se"].get<double>());
  }
  if (doc.extra.contains("corr"))
    std::printf("corr=%.6f se=%.6f theory=%.6f tau_drift=%.3g\n", doc.extra["corr"].get<double>(),
                doc.extra["corr_se"].get<double>(), doc.extra["corr_theory"].get<double>(),
                doc.extra["tau_max_drift"].get<double>());
  if (!config.out_prefix.empty())
    std::printf("wrote %s_report.json, %s_vrf.csv\n", config.out_prefix.c_str(),
                config.out_prefix.c_str());
  return 0;
}

int cmd_theory_k_alpha(const std::string& out, const std::string& format) {
  const std::vector<double> alphas = {0.50, 0.60, 0.70, 0.80, 0.90, 0.95, 0.99};
  auto rows = k_alpha_table(alphas);
  CsvTable table;
  table.header = {"alpha", "k_alpha"};
  std::printf("%-8s %s\n", "alpha", "k_alpha");
  for (const auto& row : rows) {
    std::printf("%-8.2f %d\n", row.alpha, row.k);
    table.rows.push_back({format_double(row.alpha), std::to_string(row.k)});
  }
  if (!out.empty()) write_table(out, table, format);
  return 0;
}

int cmd_theory_vrf_indicator(const std::string& dist, int k, std::vector<double> c_grid,
                             bool maximizer_mode) {
  if (maximizer_mode) {
    TheoryRow row = indicator_vrf_max(k);
    std::printf("k=%d S*=%.12f c1*=%.12f c2*=%.12f grid_maximizer=%.12f R_k=%.6f\n", k, row.s_star,
                row.c_star_low, row.c_star_high, row.grid_maximizer, row.r_k);
    return 0;
  }
  if (c_grid.empty()) c_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::printf("%-8s %-8s %s\n", "k", "c", "s_k");
  for (double c : c_grid) {
    const double s = dist == "uniform" ? indicator_vrf_uniform(c, k) : indicator_vrf_normal(c, k);
    std::printf("%-8d %-8.4f %.10f\n", k, c, s);
  }
  return 0;
}

int cmd_theory_ilhs_corr(int k, int t) {
  std::printf("%.12f\n", ilhs_corr_theory(k, t));
  return 0;
}

int cmd_theory_thm7(int k, int t) {
  std::printf("%.12e\n", thm7_bound(k, t));
  return 0;
}

int cmd_dataset(const std::string& out, const std::string& format) {
  CsvTable table;
  table.header = {"igg_diff", "iga", "cases", "total"};
  int cases = 0, total = 0;
  for (const auto& cell : lupus_table()) {
    table.rows.push_back({format_double(cell.igg_diff), format_double(cell.iga),
                          std::to_string(cell.cases), std::to_string(cell.total)});
    cases += cell.cases;
    total += cell.total;
  }
  if (!out.empty()) {
    write_table(out, table, format);
    std::printf("wrote %s\n", out.c_str());
  } else {
    std::printf("igg_diff,iga,cases,total\n");
    for (const auto& row : table.rows)
      std::printf("%s,%s,%s,%s\n", row[0].c_str(), row[1].c_str(), row[2].c_str(), row[3].c_str());
  }
  std::printf("checksum: cases=%d total=%d\n", cases, total);
  return 0;
}

int cmd_analyze(const std::string& path) {
  CsvTable table = read_csv(path);
  const std::size_t rep_col = table.column("rep");
  const std::size_t chain_col = table.column("chain");
  const std::size_t step_col = table.column("step");

  std::vector<std::string> estimand_cols;
  for (const auto& h : table.header)
    if (h != "rep" && h != "chain" && h != "step") estimand_cols.push_back(h);

  std::printf("%-12s %10s %10s %10s\n", "estimand", "s_k", "se", "rho_hat");
  for (const auto& col_name : estimand_cols) {
    const std::size_t col = table.column(col_name);
    // values[rep][chain][step]
    std::vector<std::vector<std::vector<double>>> values;
    long line = 1;
    for (const auto& row : table.rows) {
      ++line;
      const std::size_t r = static_cast<std::size_t>(parse_long_field(row[rep_col], line));
      const std::size_t j = static_cast<std::size_t>(parse_long_field(row[chain_col], line));
      const std::size_t s = static_cast<std::size_t>(parse_long_field(row[step_col], line));
      const double v = parse_double_field(row[col], line);
      if (values.size() <= r) values.resize(r + 1);
      if (values[r].size() <= j) values[r].resize(j + 1);
      if (values[r][j].size() <= s) values[r][j].resize(s + 1);
      values[r][j][s] = v;
    }
    for (std::size_t r = 0; r < values.size(); ++r) {
      if (values[r].empty()) throw parse_error("replicate " + std::to_string(r) + " has no rows");
      for (const auto& chain : values[r])
        if (chain.size() != values[0][0].size())
          throw parse_error("ragged trajectories in replicate " + std::to_string(r));
    }
    VrfReport rep = vrf_generalized(values);
    std::printf("%-12s %10.6f %10.6f %10.6f\n", col_name.c_str(), rep.s_k, rep.se_s, rep.rho_hat);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-process parallel antithetic coupling for MCMC"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "draw antithetic k-tuples to CSV");
  std::string g_method = "ilhs";
  int g_k = 2, g_t = 7, g_n = 1000;
  std::uint64_t g_seed = 0;
  std::string g_out;
  bool g_seed_given = false;
  gen->add_option("--method", g_method, "pair|pd|normal|ilhs|independent");
  gen->add_option("--k", g_k, "tuple size");
  gen->add_option("--t", g_t, "ILHS iterations");
  gen->add_option("--n", g_n, "number of tuples");
  gen->add_option("--seed", g_seed, "seed")->each([&](const std::string&) { g_seed_given = true; });
  gen->add_option("--out", g_out, "output CSV path");
  std::string g_format = "csv";
  gen->add_option("--format", g_format, "csv|json");

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a coupled-sampling experiment");
  ExperimentConfig config;
  bool e_seed_given = false;
  std::string e_method = "ilhs", e_config_out;
  exp->add_option("--experiment", config.experiment, "mixture-cftp|slice|probit|circle")->required();
  exp->add_option("--method", e_method, "generator: pair|pd|normal|ilhs|independent");
  exp->add_option("--k", config.gen.k, "number of coupled chains");
  exp->add_option("--t", config.gen.ilhs_iterations, "ILHS iterations");
  exp->add_option("--n", config.total_draws, "total draw budget (n = k*m)");
  exp->add_flag("--fixed-m", config.fixed_m, "treat --m as per-chain length instead of n = k*m");
  exp->add_option("--m", config.m_per_chain, "per-chain length (fixed-m mode)");
  exp->add_option("--estimand", config.estimands, "estimand names (repeatable)");
  exp->add_option("--data", config.data, "embedded | synthetic | CSV path (mixture)");
  exp->add_option("--data-seed", config.data_seed, "synthetic data seed");
  exp->add_option("--data-n", config.data_n, "synthetic data size");
  exp->add_option("--replicates", config.replicates, "replicate runs (forward chains)");
  exp->add_option("--burn-in", config.burn_in, "steps discarded before analysis (default 0)");
  exp->add_option("--slice-start", config.slice_start, "slice chain start state");
  exp->add_option("--start", config.start_strategy, "probit start: mle|mle2sd|extreme");
  exp->add_option("--tau", config.tau, "circle chord angle");
  exp->add_option("--cftp-t-max", config.cftp_t_max, "CFTP backward-time safety cap");
  exp->add_flag("--time", config.measure_time, "measure tau_k/tau_1 (breaks byte determinism)");
  exp->add_option("--seed", config.seed, "seed")->each([&](const std::string&) { e_seed_given = true; });
  exp->add_option("--out", config.out_prefix, "output prefix for CSV/JSON artifacts");
  exp->add_option("--config-out", e_config_out, "also write the resolved config JSON");

  // theory
  auto* theory = app.add_subcommand("theory", "closed-form tables");
  theory->require_subcommand(1);
  auto* ka = theory->add_subcommand("k-alpha", "minimum k reaching each efficiency fraction");
  std::string ka_out, ka_format = "csv";
  ka->add_option("--out", ka_out, "output CSV path");
  ka->add_option("--format", ka_format, "csv|json");
  auto* vi = theory->add_subcommand("vrf-indicator", "indicator-estimand VRF");
  std::string vi_dist = "uniform";
  int vi_k = 3;
  std::vector<double> vi_c;
  bool vi_max = false;
  vi->add_option("--dist", vi_dist, "uniform|normal");
  vi->add_option("--k", vi_k, "tuple size");
  vi->add_option("--c", vi_c, "threshold grid (repeatable)");
  vi->add_flag("--max", vi_max, "report the interior maximizer row instead");
  auto* ic = theory->add_subcommand("ilhs-corr", "ILHS pair correlation");
  int ic_k = 3, ic_t = 1;
  ic->add_option("--k", ic_k);
  ic->add_option("--t", ic_t);
  auto* tb = theory->add_subcommand("thm7-bound", "KS-distance bound");
  int tb_k = 3, tb_t = 5;
  tb->add_option("--k", tb_k);
  tb->add_option("--t", tb_t);

  // dataset
  auto* ds = app.add_subcommand("dataset", "export the embedded lupus table");
  std::string ds_out, ds_format = "csv";
  ds->add_option("--out", ds_out, "output CSV path");
  ds->add_option("--format", ds_format, "csv|json");

  // analyze
  auto* an = app.add_subcommand("analyze", "recompute VRF tables from a trajectory CSV");
  std::string an_in;
  an->add_option("--in", an_in, "trajectory CSV (rep,chain,step,state[,estimand...])")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_generate(g_method, g_k, g_t, g_n, g_seed_given, g_seed, g_out, g_format);
    if (exp->parsed()) {
      config.gen.method = method_from_name(e_method);
      return cmd_experiment(config, e_seed_given, e_config_out);
    }
    if (theory->parsed()) {
      if (ka->parsed()) return cmd_theory_k_alpha(ka_out, ka_format);
      if (vi->parsed()) return cmd_theory_vrf_indicator(vi_dist, vi_k, vi_c, vi_max);
      if (ic->parsed()) return cmd_theory_ilhs_corr(ic_k, ic_t);
      if (tb->parsed()) return cmd_theory_thm7(tb_k, tb_t);
    }
    if (ds->parsed()) return cmd_dataset(ds_out, ds_format);
    if (an->parsed()) return cmd_analyze(an_in);
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 4;
  } catch (const non_coalescence_error& e) {
    std::cerr << "coalescence failure: " << e.what() << " (reached T=" << e.t_reached()
              << ", blocks=" << e.blocks_materialized() << ")\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
