#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "antichain/generators.hpp"
#include "antichain/random.hpp"

namespace antichain {

// k forward chains over m steps; chains-major storage (chain j, step t).
template <class State>
struct CoupledTrajectories {
  std::vector<State> states;  // k * m
  std::vector<State> starts;
  GeneratorSpec spec;
  int k = 0;
  int steps = 0;
  int burn_in = 0;

  const State& at(int chain, int step) const {
    return states[static_cast<std::size_t>(chain) * static_cast<std::size_t>(steps) +
                  static_cast<std::size_t>(step)];
  }
};

// Run k antithetically coupled forward chains: at each step one fresh NA
// k-tuple per scalar uniform the update consumes, chain j receiving
// coordinate j. The update sees its uniforms as a contiguous row.
template <class State, class Step>
CoupledTrajectories<State> run_forward_coupled(Step update, const std::vector<State>& starts,
                                               const GeneratorSpec& spec, int uniforms_per_step,
                                               int m, RandomStream stream) {
  spec.validate();
  const int k = spec.k;
  if (static_cast<int>(starts.size()) != k)
    throw std::domain_error("run_forward_coupled: starts size must equal spec.k");
  if (uniforms_per_step < 1 || m < 1)
    throw std::domain_error("run_forward_coupled: need uniforms_per_step >= 1 and m >= 1");

  CoupledTrajectories<State> out;
  out.starts = starts;
  out.spec = spec;
  out.k = k;
  out.steps = m;
  out.states.resize(static_cast<std::size_t>(k) * static_cast<std::size_t>(m));

  std::vector<State> current = starts;
  std::vector<double> tuples(static_cast<std::size_t>(uniforms_per_step) * static_cast<std::size_t>(k));
  std::vector<double> row(static_cast<std::size_t>(uniforms_per_step));
  for (int t = 0; t < m; ++t) {
    for (int s = 0; s < uniforms_per_step; ++s)
      draw_uniform_tuple(stream, spec,
                         std::span<double>(tuples.data() + static_cast<std::size_t>(s) * static_cast<std::size_t>(k),
                                           static_cast<std::size_t>(k)));
    for (int j = 0; j < k; ++j) {
      for (int s = 0; s < uniforms_per_step; ++s)
        row[static_cast<std::size_t>(s)] =
            tuples[static_cast<std::size_t>(s) * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)];
      current[static_cast<std::size_t>(j)] =
          update(current[static_cast<std::size_t>(j)], std::span<const double>(row));
      out.states[static_cast<std::size_t>(j) * static_cast<std::size_t>(m) + static_cast<std::size_t>(t)] =
          current[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

}  // namespace antichain
