#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace vcmin {

// SplitMix64 (Steele, Lea, Flood 2014). Every random choice in the project
// flows from one of these; `split(i)` derives an independent stream from
// the original seed and an index, regardless of how much the parent has
// been consumed, so per-vertex and per-instance streams are stable.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : seed_(seed), state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  std::uint64_t seed() const noexcept { return seed_; }

  // Seed of child stream `index`.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix(seed ^ mix(index + 0x632be59bd9b4e019ULL));
  }

  SplitMix64 split(std::uint64_t index) const noexcept { return SplitMix64(derive(seed_, index)); }

  // Uniform in [0, bound); bound must be positive. Lemire's multiply-shift
  // with rejection, so results do not depend on the standard library.
  std::uint64_t below(std::uint64_t bound) noexcept {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) noexcept { return lo + below(hi - lo + 1); }

  // True with probability num / den.
  bool chance(std::uint64_t num, std::uint64_t den) noexcept { return below(den) < num; }

  template <typename T>
  void shuffle(std::vector<T>& v) noexcept {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

  // `count` distinct values from [0, n), in selection order.
  std::vector<std::size_t> sample(std::size_t n, std::size_t count) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    if (count > n) count = n;
    for (std::size_t i = 0; i < count; ++i) std::swap(pool[i], pool[i + below(n - i)]);
    pool.resize(count);
    return pool;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace vcmin
