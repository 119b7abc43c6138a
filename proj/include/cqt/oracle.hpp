#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cqt/geometry.hpp"
#include "cqt/quadtree.hpp"

namespace cqt {

// Identity of one region of the square/annulus decomposition: an outer cell
// minus at most one hole cell. Keys compare structurally; on canonical trees
// equal keys denote equal regions, so they are usable as map keys.
struct TileKey {
  CanonicalCell outer;
  std::vector<CanonicalCell> holes;

  bool operator==(const TileKey&) const = default;
  auto operator<=>(const TileKey&) const = default;
};

struct TileKeyHash {
  std::size_t operator()(const TileKey& key) const;
};

// Reference construction by recursive subdivision of the whole set at once,
// with single-child chains contracted. Never sees an insertion order, so it
// is the ground truth for order independence. Points must be distinct.
CompressedQuadtree build_topdown(const GeometryConfig& cfg,
                                 std::vector<QuantizedPoint> points);

// The square/annulus decomposition of the unit cube induced by a tree:
//  - every leaf contributes its cell as a square;
//  - an internal node contributes, per quadrant of its cell, an
//    empty-quadrant square when no child sits there, nothing when the child
//    fills the quadrant exactly, and otherwise the annulus between the
//    quadrant cell and the deeper child's cell;
//  - a root with a single child contributes one annulus: root minus child.
// Returned sorted; the regions partition the cube.
std::vector<TileKey> tile_decomposition(const CompressedQuadtree& tree);

// Decomposition of the canonical tree of a point set. The empty set yields
// the bare root square.
std::vector<TileKey> tiles_of(const std::vector<QuantizedPoint>& points,
                              const GeometryConfig& cfg);

// Smallest subset of `points` whose tree still produces `tile`, found by
// exhaustive enumeration in ascending cardinality up to k_max; empty result
// means no subset of size <= k_max works. `tile` must be a tile of the full
// set. Any returned set is cardinality-minimal, hence inclusion-minimal.
std::optional<std::vector<PointIndex>> defining_set_search(
    const std::vector<QuantizedPoint>& points, const GeometryConfig& cfg,
    const TileKey& tile, int k_max = 4);

// Every inclusion-minimal subset (as a bitmask over point indices) whose
// tree produces `tile`. Exhaustive over all subsets; points.size() <= 16.
std::vector<std::uint32_t> minimal_defining_sets(
    const std::vector<QuantizedPoint>& points, const GeometryConfig& cfg,
    const TileKey& tile);

// Intersection of all inclusion-minimal defining subsets of `tile` — the
// points every defining set must contain.
std::vector<PointIndex> defining_set_intersection(
    const std::vector<QuantizedPoint>& points, const GeometryConfig& cfg,
    const TileKey& tile);

// One row per tile of the full set's decomposition, from a single sweep over
// all subsets: cardinality of the smallest defining set, how many
// inclusion-minimal defining sets exist, and their intersection.
struct TileDefiningSummary {
  TileKey tile;
  std::uint32_t min_size = 0;
  std::uint32_t minimal_count = 0;
  std::uint32_t intersection_mask = 0;
  std::uint32_t intersection_size = 0;
};

std::vector<TileDefiningSummary> survey_defining_sets(
    const std::vector<QuantizedPoint>& points, const GeometryConfig& cfg);

}  // namespace cqt
