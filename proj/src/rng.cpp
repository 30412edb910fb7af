#include "treecode/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace treecode {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ (stream * 0xA24BAED4963EE407ull + 0x9552FB43C2B9F7E1ull));
  engine_.seed(s);
}

std::uint64_t RandomSource::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be >= 1");
  // rejection threshold: lowest r with an unbiased r % bound
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

std::int64_t RandomSource::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t span =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  return lo + static_cast<std::int64_t>(uniform_below(span));
}

double RandomSource::uniform_unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

RandomSource RandomSource::substream(std::uint64_t index) const {
  return RandomSource(seed_, splitmix64(stream_ * 0x632BE59BD9B4E019ull + index + 1));
}

std::vector<std::int64_t> RandomSource::distinct_sorted(std::int64_t k, std::int64_t m) {
  if (k < 0 || k > m) throw std::invalid_argument("distinct_sorted: need 0 <= k <= m");
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(k));
  for (std::int64_t j = m - k + 1; j <= m; ++j) {
    const std::int64_t t = uniform_int(1, j);
    if (std::find(out.begin(), out.end(), t) != out.end())
      out.push_back(j);
    else
      out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace treecode
