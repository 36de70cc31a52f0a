#pragma once

#include <cstdint>

#include "antichain/random.hpp"

namespace antichain {

using u128 = unsigned __int128;

// Fixed-point fraction on [0,1]: value = bits / 2^128, or exactly 1 when the
// `one` flag is set (bits must then be 0). Doubling modulo 1, the shift
// x -> {x + 1/2} and the complement 1 - x are all exact, which is what keeps
// the dyadic displacement sum identity bit-exact.
struct UnitFraction {
  u128 bits = 0;
  bool one = false;

  static UnitFraction zero() { return {}; }
  static UnitFraction unit() { return {0, true}; }

  static UnitFraction from_stream(RandomStream& s) {
    u128 hi = s.next_u64();
    u128 lo = s.next_u64();
    return {(hi << 64) | lo, false};
  }

  // {2x}: drop the integer part after doubling. {1.0} = 0 by convention,
  // which the wraparound produces on its own.
  UnitFraction double_mod1() const {
    if (one) return zero();  // {2.0} = 0
    return {static_cast<u128>(bits << 1), false};
  }

  // {x + 1/2}
  UnitFraction add_half_mod1() const {
    if (one) return {static_cast<u128>(u128(1) << 127), false};  // {1.5} = 0.5
    return {static_cast<u128>(bits + (u128(1) << 127)), false};
  }

  // 1 - x; exact, may produce the closed endpoint 1.
  UnitFraction complement() const {
    if (one) return zero();
    if (bits == 0) return unit();
    return {static_cast<u128>(0) - bits, false};
  }

  double to_double() const {
    if (one) return 1.0;
    const double hi = static_cast<double>(static_cast<std::uint64_t>(bits >> 64));
    const double lo = static_cast<double>(static_cast<std::uint64_t>(bits));
    return hi * 0x1.0p-64 + lo * 0x1.0p-128;
  }

  bool operator==(const UnitFraction& o) const { return bits == o.bits && one == o.one; }
};

// Exact sum of unit fractions as (whole units, fractional bits/2^128).
struct UnitFractionSum {
  std::uint64_t units = 0;
  u128 frac_bits = 0;

  void add(const UnitFraction& f) {
    if (f.one) {
      ++units;
      return;
    }
    u128 before = frac_bits;
    frac_bits += f.bits;
    if (frac_bits < before) ++units;  // carry out of the 128-bit fraction
  }

  // True iff the accumulated sum equals k/2 exactly.
  bool equals_half_of(int k) const {
    if (k % 2 == 0) return frac_bits == 0 && units == static_cast<std::uint64_t>(k / 2);
    return frac_bits == (u128(1) << 127) && units == static_cast<std::uint64_t>(k / 2);
  }
};

}  // namespace antichain
