#include "cqt/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>
#include <utility>

namespace cqt {

namespace {

void hash_cell(std::size_t& h, const CanonicalCell& cell) {
  constexpr std::size_t kPrime = 0x100000001b3ULL;
  h = (h ^ cell.level) * kPrime;
  for (Coord c : cell.corner) h = (h ^ c) * kPrime;
}

}  // namespace

std::size_t TileKeyHash::operator()(const TileKey& key) const {
  std::size_t h = 0xcbf29ce484222325ULL;
  hash_cell(h, key.outer);
  for (const CanonicalCell& hole : key.holes) hash_cell(h, hole);
  return h;
}

CompressedQuadtree build_topdown(const GeometryConfig& cfg,
                                 std::vector<QuantizedPoint> points) {
  CompressedQuadtree tree(cfg, std::move(points), ConflictTracking::kNone);
  const auto& pts = tree.points();
  const std::size_t n = pts.size();
  const int L = cfg.resolution_bits;
  if (n == 0) return tree;
  if (n == 1) {
    tree.place_point(tree.root(), 0);
    return tree;
  }

  // Smallest cell around a group of points, folded pairwise.
  auto group_cell = [&](const std::vector<PointIndex>& group) {
    CanonicalCell cell = smallest_common_cell(pts[group[0]], pts[group[1]], cfg);
    for (std::size_t i = 2; i < group.size(); ++i) {
      cell = smallest_common_cell(pts[group[i]], cell, cfg);
    }
    return cell;
  };

  struct Task {
    NodeId node;
    std::vector<PointIndex> group;  // >= 2 points, all inside node's cell
  };
  std::vector<Task> stack;

  std::vector<PointIndex> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<PointIndex>(i);
  const CanonicalCell top = group_cell(all);
  if (top.is_unit_cube()) {
    stack.push_back({tree.root(), std::move(all)});
  } else {
    // All points share a proper subcell: one compressed edge off the root.
    const NodeId u = tree.attach_child(
        tree.root(), child_quadrant(tree.node(tree.root()).cell, top), top);
    stack.push_back({u, std::move(all)});
  }

  std::vector<std::pair<std::uint32_t, PointIndex>> tagged;
  while (!stack.empty()) {
    Task task = std::move(stack.back());
    stack.pop_back();
    const CanonicalCell cell = tree.node(task.node).cell;

    tagged.clear();
    for (PointIndex idx : task.group) {
      tagged.emplace_back(quadrant_index(cell, pts[idx], L), idx);
    }
    std::sort(tagged.begin(), tagged.end());

    std::size_t lo = 0;
    while (lo < tagged.size()) {
      std::size_t hi = lo;
      while (hi < tagged.size() && tagged[hi].first == tagged[lo].first) ++hi;
      const std::uint32_t quad = tagged[lo].first;
      if (hi - lo == 1) {
        const NodeId leaf =
            tree.attach_child(task.node, quad, child_cell(cell, quad, L));
        tree.place_point(leaf, tagged[lo].second);
      } else {
        std::vector<PointIndex> group;
        group.reserve(hi - lo);
        for (std::size_t i = lo; i < hi; ++i) group.push_back(tagged[i].second);
        const NodeId child =
            tree.attach_child(task.node, quad, group_cell(group));
        stack.push_back({child, std::move(group)});
      }
      lo = hi;
    }
  }
  return tree;
}

std::vector<TileKey> tile_decomposition(const CompressedQuadtree& tree) {
  std::vector<TileKey> tiles;
  const int L = tree.config().resolution_bits;
  const std::uint32_t quadrants = tree.config().quadrant_count();
  for (NodeId id = 0; id < tree.node_count(); ++id) {
    const Node& n = tree.node(id);
    if (n.is_leaf()) {
      tiles.push_back(TileKey{n.cell, {}});
      continue;
    }
    if (id == tree.root() && n.children.size() == 1) {
      tiles.push_back(
          TileKey{n.cell, {tree.node(n.children.front().node).cell}});
      continue;
    }
    std::size_t ci = 0;
    for (std::uint32_t q = 0; q < quadrants; ++q) {
      if (ci < n.children.size() && n.children[ci].quadrant == q) {
        const Node& w = tree.node(n.children[ci].node);
        ++ci;
        if (w.cell.level > n.cell.level + 1) {
          tiles.push_back(TileKey{child_cell(n.cell, q, L), {w.cell}});
        }
      } else {
        tiles.push_back(TileKey{child_cell(n.cell, q, L), {}});
      }
    }
  }
  std::sort(tiles.begin(), tiles.end());
  return tiles;
}

std::vector<TileKey> tiles_of(const std::vector<QuantizedPoint>& points,
                              const GeometryConfig& cfg) {
  return tile_decomposition(build_topdown(cfg, points));
}

namespace {

std::vector<QuantizedPoint> subset_points(
    const std::vector<QuantizedPoint>& points, std::uint32_t mask) {
  std::vector<QuantizedPoint> out;
  out.reserve(static_cast<std::size_t>(std::popcount(mask)));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (mask & (std::uint32_t{1} << i)) out.push_back(points[i]);
  }
  return out;
}

bool has_tile(const std::vector<TileKey>& sorted, const TileKey& tile) {
  return std::binary_search(sorted.begin(), sorted.end(), tile);
}

void require_tile_of_full_set(const std::vector<QuantizedPoint>& points,
                              const GeometryConfig& cfg, const TileKey& tile) {
  if (!has_tile(tiles_of(points, cfg), tile)) {
    throw std::invalid_argument(
        "the queried tile is not part of the full set's decomposition");
  }
}

// All subset masks of {0..n-1} ordered by cardinality, ties by value.
std::vector<std::uint32_t> masks_by_cardinality(std::size_t n) {
  std::vector<std::uint32_t> order(std::size_t{1} << n);
  for (std::size_t m = 0; m < order.size(); ++m) {
    order[m] = static_cast<std::uint32_t>(m);
  }
  std::sort(order.begin(), order.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a);
    const int pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return order;
}

}  // namespace

std::optional<std::vector<PointIndex>> defining_set_search(
    const std::vector<QuantizedPoint>& points, const GeometryConfig& cfg,
    const TileKey& tile, int k_max) {
  const std::size_t n = points.size();
  if (n > 31) {
    throw std::invalid_argument("defining_set_search: set too large");
  }
  require_tile_of_full_set(points, cfg, tile);

  const std::uint32_t full =
      n == 31 ? 0x7fffffffu : (std::uint32_t{1} << n) - 1;
  for (int k = 0; k <= k_max && k <= static_cast<int>(n); ++k) {
    if (k == 0) {
      if (has_tile(tiles_of({}, cfg), tile)) return std::vector<PointIndex>{};
      continue;
    }
    // Gosper's hack: next mask with the same popcount.
    std::uint32_t mask = (std::uint32_t{1} << k) - 1;
    while (mask <= full) {
      if (has_tile(tiles_of(subset_points(points, mask), cfg), tile)) {
        std::vector<PointIndex> out;
        for (std::size_t i = 0; i < n; ++i) {
          if (mask & (std::uint32_t{1} << i)) {
            out.push_back(static_cast<PointIndex>(i));
          }
        }
        return out;
      }
      const std::uint32_t c = mask & (~mask + 1);
      const std::uint32_t r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
      if (r == 0) break;  // popcount group exhausted past the top bit
    }
  }
  return std::nullopt;
}

std::vector<std::uint32_t> minimal_defining_sets(
    const std::vector<QuantizedPoint>& points, const GeometryConfig& cfg,
    const TileKey& tile) {
  const std::size_t n = points.size();
  if (n > 16) {
    throw std::invalid_argument("minimal_defining_sets: set too large");
  }
  require_tile_of_full_set(points, cfg, tile);

  // Ascending cardinality guarantees that every defining mask examined
  // after the minimal ones contains one of them, so a subset test against
  // the confirmed list decides minimality.
  std::vector<std::uint32_t> minimal;
  for (std::uint32_t mask : masks_by_cardinality(n)) {
    bool covered = false;
    for (std::uint32_t m : minimal) {
      if ((m & mask) == m) {
        covered = true;
        break;
      }
    }
    if (covered) continue;
    if (has_tile(tiles_of(subset_points(points, mask), cfg), tile)) {
      minimal.push_back(mask);
    }
  }
  return minimal;
}

std::vector<PointIndex> defining_set_intersection(
    const std::vector<QuantizedPoint>& points, const GeometryConfig& cfg,
    const TileKey& tile) {
  const auto minimal = minimal_defining_sets(points, cfg, tile);
  std::uint32_t common = minimal.empty() ? 0 : minimal.front();
  for (std::uint32_t m : minimal) common &= m;
  std::vector<PointIndex> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (common & (std::uint32_t{1} << i)) {
      out.push_back(static_cast<PointIndex>(i));
    }
  }
  return out;
}

std::vector<TileDefiningSummary> survey_defining_sets(
    const std::vector<QuantizedPoint>& points, const GeometryConfig& cfg) {
  const std::size_t n = points.size();
  if (n > 16) {
    throw std::invalid_argument("survey_defining_sets: set too large");
  }
  const std::vector<TileKey> tiles = tiles_of(points, cfg);
  std::vector<std::vector<std::uint32_t>> minimal(tiles.size());

  for (std::uint32_t mask : masks_by_cardinality(n)) {
    const auto decomposition = tiles_of(subset_points(points, mask), cfg);
    for (const TileKey& key : decomposition) {
      const auto it = std::lower_bound(tiles.begin(), tiles.end(), key);
      if (it == tiles.end() || *it != key) continue;
      auto& sets = minimal[static_cast<std::size_t>(it - tiles.begin())];
      bool covered = false;
      for (std::uint32_t m : sets) {
        if ((m & mask) == m) {
          covered = true;
          break;
        }
      }
      if (!covered) sets.push_back(mask);
    }
  }

  std::vector<TileDefiningSummary> out;
  out.reserve(tiles.size());
  for (std::size_t t = 0; t < tiles.size(); ++t) {
    TileDefiningSummary row;
    row.tile = tiles[t];
    assert(!minimal[t].empty());  // the full set itself produces the tile
    row.min_size = static_cast<std::uint32_t>(std::popcount(minimal[t].front()));
    row.minimal_count = static_cast<std::uint32_t>(minimal[t].size());
    row.intersection_mask = minimal[t].front();
    for (std::uint32_t m : minimal[t]) row.intersection_mask &= m;
    row.intersection_size =
        static_cast<std::uint32_t>(std::popcount(row.intersection_mask));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace cqt
