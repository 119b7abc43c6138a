#include "cqt/pointgen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "cqt/rng.hpp"

namespace cqt {

RealPointSet generate_uniform(std::size_t n, int dim, std::uint64_t seed) {
  RealPointSet out;
  out.dim = dim;
  out.values.reserve(n * static_cast<std::size_t>(dim));
  Rng rng(seed);
  for (std::size_t i = 0; i < n * static_cast<std::size_t>(dim); ++i) {
    out.values.push_back(rng.next_unit());
  }
  return out;
}

RealPointSet generate_clustered(std::size_t n, int dim, std::uint32_t clusters,
                                double radius, std::uint64_t seed) {
  if (clusters == 0) throw std::invalid_argument("need at least one cluster");
  RealPointSet centers = generate_uniform(clusters, dim, mix_seed(seed, 0));
  RealPointSet out;
  out.dim = dim;
  out.values.reserve(n * static_cast<std::size_t>(dim));
  Rng rng(mix_seed(seed, 1));
  const double top = std::nextafter(1.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto center =
        centers.point(static_cast<std::size_t>(rng.next_below(clusters)));
    for (int k = 0; k < dim; ++k) {
      const double offset = (rng.next_unit() * 2.0 - 1.0) * radius;
      out.values.push_back(std::clamp(center[static_cast<std::size_t>(k)] + offset, 0.0, top));
    }
  }
  return out;
}

std::vector<QuantizedPoint> generate_distinct_quantized(
    std::size_t n, const GeometryConfig& cfg, std::uint64_t seed) {
  cfg.check();
  // Lattice capacity check so the resample loop terminates.
  double capacity = 1.0;
  for (int k = 0; k < cfg.dim; ++k) {
    capacity *= static_cast<double>(cfg.lattice_side());
    if (capacity >= 1e18) break;
  }
  if (static_cast<double>(n) > capacity) {
    throw std::invalid_argument("lattice too small for that many distinct points");
  }

  struct CoordsHash {
    std::size_t operator()(const std::vector<Coord>& coords) const {
      std::size_t h = 0xcbf29ce484222325ULL;
      for (Coord c : coords) h = (h ^ c) * 0x100000001b3ULL;
      return h;
    }
  };
  std::unordered_set<std::vector<Coord>, CoordsHash> seen;
  seen.reserve(n * 2);

  std::vector<QuantizedPoint> out;
  out.reserve(n);
  Rng rng(seed);
  while (out.size() < n) {
    std::vector<Coord> coords(static_cast<std::size_t>(cfg.dim));
    for (auto& c : coords) c = rng.next_below(cfg.lattice_side());
    if (seen.insert(coords).second) {
      out.push_back(
          QuantizedPoint{std::move(coords), static_cast<std::uint32_t>(out.size())});
    }
  }
  return out;
}

}  // namespace cqt
