#pragma once

#include <cstdint>
#include <vector>

#include "cqt/geometry.hpp"
#include "cqt/quadtree.hpp"

namespace cqt {

struct BuildConfig {
  GeometryConfig geometry;
  std::uint64_t seed = 0;
  bool collect_stats = true;
};

// One insertion step: `index` counts from 1, `conflict_size` is the host's
// conflict-list size right after the inserted point left it, and
// `nodes_created` is how many nodes the restructuring allocated (at most 3).
struct IterationRecord {
  std::uint32_t index = 0;
  std::uint32_t conflict_size = 0;
  std::uint32_t nodes_created = 0;
};

struct BuildStats {
  std::vector<IterationRecord> iterations;
  // Each step costs one unit plus the points it has to re-home.
  std::uint64_t total_work = 0;
};

struct BuildResult {
  CompressedQuadtree tree;
  std::vector<std::uint32_t> insertion_order;  // arena indices, step order
  BuildStats stats;
};

// Randomized incremental construction: shuffle, then insert one point per
// step, locating each through the conflict lists in O(1).
BuildResult build_quantized(GeometryConfig geometry,
                            std::vector<QuantizedPoint> points,
                            std::uint64_t seed, bool collect_stats = true);

BuildResult build(const RealPointSet& points, const BuildConfig& config);

}  // namespace cqt
