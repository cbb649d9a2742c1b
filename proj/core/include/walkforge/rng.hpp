#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace walkforge {

// The one generator behind every randomized suite, named so reports can say
// exactly how their samples were drawn.  mt19937_64 has a fully specified
// sequence and the bounded draw below avoids std::uniform_int_distribution,
// whose output is implementation-defined; the same seed therefore replays
// the same run on any platform.
inline constexpr const char* kRngName = "walkforge-rng/1";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform-ish over [0, n); the modulo bias is irrelevant here, replay
  // stability is what matters.
  std::uint64_t below(std::uint64_t n) { return n <= 1 ? 0 : engine_() % n; }

  std::uint32_t below32(std::uint32_t n) { return static_cast<std::uint32_t>(below(n)); }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

  // k distinct values from [0, n); requires k <= n.
  std::vector<std::uint32_t> sample_distinct(std::uint32_t n, std::size_t k) {
    std::vector<std::uint32_t> pool(n);
    for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
    shuffle(pool);
    pool.resize(k);
    return pool;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace walkforge
