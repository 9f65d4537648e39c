#pragma once

// SplitMix64 used as a counter-based generator: the k-th output of stream
// `key` is mix64(key + (k + 1) * golden_gamma). Any output can be computed
// independently, and derive_key() splits a seed into independent streams.

#include <cstdint>

namespace pwig {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z);

// Key for sub-stream `index` of `seed`.
std::uint64_t derive_key(std::uint64_t seed, std::uint64_t index);

class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type at(std::uint64_t counter) const { return mix64(key_ + (counter + 1) * kGoldenGamma); }
  result_type operator()() { return at(counter_++); }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace pwig
