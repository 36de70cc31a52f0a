#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "antichain/errors.hpp"
#include "antichain/ledger.hpp"

namespace antichain {

// Doubling schedule T = 1, 2, 4, ... with a safety cap.
struct CftpConfig {
  std::int64_t t_start = 1;
  std::int64_t t_max = std::int64_t{1} << 20;
};

template <class State>
struct CftpDraw {
  State state;
  std::int64_t t_final = 0;
};

template <class State>
struct CftpResult {
  std::vector<CftpDraw<State>> draws;       // one per process
  std::size_t blocks_materialized = 0;
  std::int64_t t_final_max = 0;
};

// Backward coupling for one process: run the extremal chains from -T to 0
// through the ledger's (memoized) randomness, test coalescence at time 0,
// double T on failure while reusing every already-materialized block.
// psi(state, u_row) must be nondecreasing in state at fixed randomness.
// Returns an exact draw from the invariant distribution.
template <class State, class Step, class Coalesced>
CftpDraw<State> run_cftp_single_process(Step psi, const State& bottom_start, const State& top_start,
                                        RandomnessLedger& ledger, int process,
                                        const CftpConfig& config = {}) {
  std::vector<double> row(static_cast<std::size_t>(ledger.n_scalars()));
  for (std::int64_t t_back = config.t_start;; t_back *= 2) {
    if (t_back > config.t_max)
      throw non_coalescence_error("CFTP did not coalesce by t_max = " + std::to_string(config.t_max),
                                  t_back / 2, ledger.blocks_materialized());
    State bottom = bottom_start;
    State top = top_start;
    for (std::int64_t t = -t_back; t < 0; ++t) {
      ledger.block_column(t, process, row);
      bottom = psi(bottom, std::span<const double>(row));
      top = psi(top, std::span<const double>(row));
    }
    if (Coalesced{}(bottom, top)) return {bottom, t_back};
  }
}

// k coupled processes over one shared ledger whose time-t blocks carry one
// NA k-tuple per scalar position; process j always reads coordinate j, and
// each process runs its own doubling schedule.
template <class State, class Step, class Coalesced>
CftpResult<State> run_cftp_k_processes(Step psi, const State& bottom_start, const State& top_start,
                                       RandomnessLedger& ledger, const CftpConfig& config = {}) {
  CftpResult<State> result;
  const int k = ledger.spec().k;
  result.draws.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    result.draws.push_back(
        run_cftp_single_process<State, Step, Coalesced>(psi, bottom_start, top_start, ledger, j, config));
    result.t_final_max = std::max(result.t_final_max, result.draws.back().t_final);
  }
  result.blocks_materialized = ledger.blocks_materialized();
  return result;
}

}  // namespace antichain
