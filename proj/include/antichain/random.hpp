#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace antichain {

// SplitMix64 output function (Vigna 2015).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t GOLDEN_GAMMA = 0x9e3779b97f4a7c15ULL;

// Splittable seeded stream: identical (seed, stream_id) reproduces the same
// sequence on every platform; distinct stream_ids from one seed give
// statistically independent sequences. A stream is single-owner: never
// advance one instance from two execution contexts at once.
class RandomStream {
 public:
  RandomStream() : RandomStream(0, 0) {}
  RandomStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id), counter_(0) {
    state_ = mix64(mix64(seed + GOLDEN_GAMMA) ^ (stream_id + 0x5851f42d4c957f2dULL));
    if (state_ == 0) state_ = GOLDEN_GAMMA;
  }

  // New stream derived from this one's identity; advancing either does not
  // affect the other.
  RandomStream split(std::uint64_t sub_id) const {
    return RandomStream(seed_, mix64(stream_id_ + GOLDEN_GAMMA) ^ sub_id);
  }

  std::uint64_t next_u64() {
    ++counter_;
    std::uint64_t z = (state_ += GOLDEN_GAMMA);
    return mix64(z);
  }

  // Uniform on [0,1) at 2^-53 resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0,1); both endpoints unreachable.
  double next_open01() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  // Unbiased uniform on {0, ..., n-1} by rejection.
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) throw std::domain_error("next_below: n must be positive");
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_;
  std::uint64_t state_;
};

// Uniform permutation of {0,...,k-1} by Fisher-Yates.
inline void sample_permutation(RandomStream& stream, int k, std::span<int> out) {
  if (k < 1) throw std::domain_error("sample_permutation: k must be >= 1");
  if (static_cast<int>(out.size()) != k) throw std::domain_error("sample_permutation: bad span size");
  for (int i = 0; i < k; ++i) out[i] = i;
  for (int i = k - 1; i > 0; --i) {
    int j = static_cast<int>(stream.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(out[i], out[j]);
  }
}

inline std::vector<int> sample_permutation(RandomStream& stream, int k) {
  std::vector<int> p(static_cast<std::size_t>(k));
  sample_permutation(stream, k, p);
  return p;
}

}  // namespace antichain
