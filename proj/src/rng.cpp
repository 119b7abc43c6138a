#include "cqt/rng.hpp"

namespace cqt {

std::vector<std::uint32_t> random_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::uint32_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
  Rng rng(seed);
  fisher_yates(order, rng);
  return order;
}

}  // namespace cqt
