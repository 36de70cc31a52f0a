#include "antichain/ledger.hpp"

#include <stdexcept>

#include "antichain/errors.hpp"

namespace antichain {

RandomnessLedger::RandomnessLedger(const RandomStream& parent, GeneratorSpec spec, int n_scalars)
    : parent_(parent), spec_(spec), n_scalars_(n_scalars) {
  spec_.validate();
  if (n_scalars < 1) throw std::domain_error("RandomnessLedger: n_scalars must be >= 1");
}

const std::vector<double>& RandomnessLedger::block(std::int64_t t) {
  if (t >= 0) throw std::domain_error("RandomnessLedger: time index must be negative");
  auto it = blocks_.find(t);
  if (it != blocks_.end()) return it->second;

  RandomStream sub = parent_.split(static_cast<std::uint64_t>(-t));
  std::vector<double> b(static_cast<std::size_t>(n_scalars_) * static_cast<std::size_t>(spec_.k));
  for (int s = 0; s < n_scalars_; ++s)
    draw_uniform_tuple(sub, spec_,
                       std::span<double>(b.data() + static_cast<std::size_t>(s) * static_cast<std::size_t>(spec_.k),
                                         static_cast<std::size_t>(spec_.k)));
  return blocks_.emplace(t, std::move(b)).first->second;
}

void RandomnessLedger::block_column(std::int64_t t, int process, std::span<double> out) {
  if (process < 0 || process >= spec_.k) throw std::domain_error("block_column: bad process index");
  if (static_cast<int>(out.size()) != n_scalars_) throw std::domain_error("block_column: bad span size");
  const auto& b = block(t);
  for (int s = 0; s < n_scalars_; ++s)
    out[static_cast<std::size_t>(s)] =
        b[static_cast<std::size_t>(s) * static_cast<std::size_t>(spec_.k) + static_cast<std::size_t>(process)];
}

std::span<const double> ledger_get_block(RandomnessLedger& ledger, std::int64_t t, int n_scalars) {
  if (n_scalars != ledger.n_scalars())
    throw contract_error("ledger_get_block: shape mismatch with memoized blocks");
  return ledger.block(t);
}

}  // namespace antichain
