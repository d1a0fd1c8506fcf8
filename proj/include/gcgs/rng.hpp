#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace gcgs {

// Deterministic 64-bit PRNG (splitmix64). We roll our own bounded draws and
// shuffle because the std distributions are implementation-defined, and run
// reproducibility across toolchains is part of the contract.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). n must be > 0. Rejection sampling keeps it unbiased.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % n;
  }

  double unit() {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  // Derives an independent stream, e.g. one per task or per round.
  Rng fork(std::uint64_t salt) const {
    Rng r(state_ ^ (salt * 0xd6e8feb86659fd93ULL + 0x2545f4914f6cdd1dULL));
    r.next();
    return r;
  }

 private:
  std::uint64_t state_;
};

// Stable 64-bit mix of a seed and a string label, for per-instance streams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace gcgs
