#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "antichain/generators.hpp"
#include "antichain/random.hpp"

namespace antichain {

// Lazily materialized per-step randomness for CFTP. The block at negative
// time t holds n_scalars positions, each a k-wide NA tuple laid out
// position-major: block[s*k + j] is coordinate j (process j) of position s.
// A block, once created, is returned bit-identically forever (the CFTP
// reuse-on-doubling contract); blocks at distinct t come from independent
// sub-streams of the parent.
class RandomnessLedger {
 public:
  RandomnessLedger(const RandomStream& parent, GeneratorSpec spec, int n_scalars);

  const std::vector<double>& block(std::int64_t t);

  // Copy process j's column of block(t) into out (size n_scalars).
  void block_column(std::int64_t t, int process, std::span<double> out);

  std::size_t blocks_materialized() const { return blocks_.size(); }
  int n_scalars() const { return n_scalars_; }
  const GeneratorSpec& spec() const { return spec_; }

 private:
  RandomStream parent_;
  GeneratorSpec spec_;
  int n_scalars_;
  std::map<std::int64_t, std::vector<double>> blocks_;
};

// Shape-checked access; throws contract_error if t's block was already
// materialized with a different shape expectation.
std::span<const double> ledger_get_block(RandomnessLedger& ledger, std::int64_t t, int n_scalars);

}  // namespace antichain
