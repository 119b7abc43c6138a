#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

namespace cqt {

// Deterministic random source used everywhere randomness is needed.
//
// std::mt19937_64 itself produces an implementation-independent stream, but
// the standard distributions (std::uniform_int_distribution, std::shuffle)
// do not, so bounded draws are implemented here by masked rejection and
// doubles by the usual 53-bit scaling. Results are reproducible bit for bit
// across platforms for a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform draw from [0, bound). bound must be >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t mask = std::bit_ceil(bound) - 1;
    for (;;) {
      const std::uint64_t r = engine_() & mask;
      if (r < bound) return r;
    }
  }

  // Uniform double in [0, 1), 53 significant bits.
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

// splitmix64 step; used to derive independent per-trial seeds from a base
// seed without correlated low bits.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// In-place Fisher-Yates shuffle driven by Rng::next_below.
template <typename T>
void fisher_yates(std::vector<T>& values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(values[i - 1], values[j]);
  }
}

// Identity permutation of n indices shuffled with the given seed.
std::vector<std::uint32_t> random_permutation(std::size_t n, std::uint64_t seed);

}  // namespace cqt
