#pragma once

#include <cstdint>
#include <random>

namespace legcalc {

// splitmix64; used to derive independent sub-seeds so that per-trial /
// per-attempt streams never overlap.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic uniform draws. std::uniform_real_distribution is
// implementation-defined, so the double conversion is done by hand.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // uniform in [0, 1)
  double next_unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // uniform in [-1, 1)
  double next_signed() { return 2.0 * next_unit() - 1.0; }

  // uniform integer in [lo, hi] (small ranges only; modulo bias negligible
  // for the |hi-lo| <= 7 uses in this project, but rejected anyway)
  int next_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return lo + static_cast<int>(x % span);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace legcalc
