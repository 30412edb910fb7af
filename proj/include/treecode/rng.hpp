#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace treecode {

// Seedable deterministic generator with derivable substreams.
//
// Engine: std::mt19937_64 (19937-bit state, output sequence fixed by the
// C++ standard, so identical across platforms). Bounded integers use
// rejection sampling on the raw 64-bit output and shuffling is explicit
// Fisher-Yates, because std::uniform_int_distribution and std::shuffle are
// implementation-defined and would break cross-platform reproducibility.
//
// Substreams: stream k is seeded with two splitmix64 rounds over
// (seed, stream), giving independent deterministic streams for parallel
// workers identified by (seed, stream) in output metadata.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  static const char* algorithm() { return "mt19937_64"; }

  std::uint64_t next_u64() { return engine_(); }

  // uniform on {0, ..., bound-1}; bound >= 1
  std::uint64_t uniform_below(std::uint64_t bound);

  // uniform on {lo, ..., hi} inclusive
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  double uniform_unit();  // [0, 1), 53-bit resolution

  RandomSource substream(std::uint64_t index) const;

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct values from {1, ..., m}, ascending (Floyd's algorithm)
  std::vector<std::int64_t> distinct_sorted(std::int64_t k, std::int64_t m);

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace treecode
