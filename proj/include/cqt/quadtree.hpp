#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cqt/geometry.hpp"

namespace cqt {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr std::uint32_t kStoredSlot =
    std::numeric_limits<std::uint32_t>::max();

struct ChildLink {
  std::uint32_t quadrant = 0;
  NodeId node = kNoNode;
};

// One tree node. Leaves hold exactly one point (the root may hold none while
// the tree is empty); internal nodes hold none. `conflicts` lists the
// not-yet-inserted points whose location falls in this node's tile.
struct Node {
  CanonicalCell cell;
  std::vector<ChildLink> children;  // sorted by quadrant, distinct quadrants
  std::optional<PointIndex> stored_point;
  std::vector<PointIndex> conflicts;
  NodeId parent = kNoNode;

  bool is_leaf() const { return children.empty(); }
  NodeId child_in(std::uint32_t quadrant) const {
    for (const ChildLink& link : children) {
      if (link.quadrant == quadrant) return link.node;
    }
    return kNoNode;
  }
};

// Which structural case an insertion hit.
enum class RestructureKind {
  kRootStore,     // empty root leaf takes the point, no new nodes
  kQuadrantLeaf,  // new leaf in an unoccupied quadrant of an internal node
  kLeafSplit,     // occupied leaf splits at the common cell of old and new
  kEdgeSplice,    // new node spliced into a compressed edge, plus a leaf
};

// What one insertion did: the nodes it allocated and the tiles whose regions
// absorbed pieces of the host's old tile. Candidates are listed deepest
// first; their tiles are pairwise disjoint and cover the host's old tile.
struct RestructureReport {
  RestructureKind kind = RestructureKind::kRootStore;
  NodeId host = kNoNode;
  std::uint32_t conflict_count = 0;  // host conflicts after removing the point
  std::array<NodeId, 3> new_nodes{kNoNode, kNoNode, kNoNode};
  std::uint32_t new_count = 0;
  std::array<NodeId, 4> candidates{kNoNode, kNoNode, kNoNode, kNoNode};
  std::uint32_t candidate_count = 0;

  std::span<const NodeId> created() const {
    return {new_nodes.data(), new_count};
  }
  std::span<const NodeId> candidate_nodes() const {
    return {candidates.data(), candidate_count};
  }
};

enum class ConflictTracking { kTracked, kNone };

// Compressed quadtree over a fixed arena of quantized points. The node in
// charge of a region is the unique one whose tile (cell minus child cells)
// contains it; nonempty tiles of all nodes partition the unit cube.
//
// Shape is canonical and insertion-order independent: the root cell is
// always the unit cube, an internal node's cell is the smallest canonical
// cell containing the points below it, a leaf's cell is the quadrant of its
// parent it occupies, and every non-root internal node has at least two
// children.
class CompressedQuadtree {
 public:
  CompressedQuadtree(GeometryConfig cfg, std::vector<QuantizedPoint> points,
                     ConflictTracking tracking);

  const GeometryConfig& config() const { return cfg_; }
  NodeId root() const { return 0; }
  const Node& node(NodeId id) const { return nodes_[id]; }
  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<QuantizedPoint>& points() const { return points_; }
  const QuantizedPoint& point(PointIndex i) const { return points_[i]; }
  std::size_t inserted_count() const { return inserted_count_; }
  bool is_inserted(PointIndex i) const;

  // Node currently in charge of the point, maintained as a back-pointer so
  // the construction never searches for it.
  NodeId point_location(PointIndex i) const { return point_node_[i]; }

  // The region owned by a node: its cell minus its children's cells.
  Tile tile_of(NodeId id) const;

  // Locate by descending from the root; lands at the unique node whose tile
  // contains p. Used for verification, not by the construction itself.
  NodeId locate_tile(const QuantizedPoint& p) const;

  // Insert the point into the node owning it (found via the back-pointer),
  // restructure, and redistribute that node's conflict list. One call per
  // construction round.
  RestructureReport insert(PointIndex p);

  // Structural half of an insertion: p must lie in v's tile. Removes p from
  // v's conflict list, grows the tree by at most three nodes, and reports
  // the candidate tiles. The conflict lists of v are not yet redistributed.
  RestructureReport insert_at(NodeId v, PointIndex p);

  // Move every conflict of the host onto the candidate whose tile now
  // contains it. Throws std::logic_error if a point lands nowhere.
  void redistribute(const RestructureReport& report);

  // Low-level assembly for alternative construction paths (top-down builds,
  // deserialization). These do not touch conflict lists.
  NodeId attach_child(NodeId parent, std::uint32_t quadrant, CanonicalCell cell);
  void place_point(NodeId leaf, PointIndex p);

  std::uint32_t max_level() const;
  std::size_t compressed_edge_count() const;

 private:
  NodeId allocate_node(CanonicalCell cell, NodeId parent);
  void add_child_link(NodeId parent, std::uint32_t quadrant, NodeId child);
  void replace_child_link(NodeId parent, std::uint32_t quadrant, NodeId child);
  void remove_conflict(NodeId node, std::uint32_t slot);
  void append_conflict(NodeId node, PointIndex p);
  void mark_stored(NodeId node, PointIndex p);

  GeometryConfig cfg_;
  std::vector<QuantizedPoint> points_;
  std::vector<Node> nodes_;
  std::vector<NodeId> point_node_;
  std::vector<std::uint32_t> point_slot_;  // kStoredSlot once inserted
  std::size_t inserted_count_ = 0;
  ConflictTracking tracking_;
};

// One line per node, preorder, children in ascending quadrant order:
//   level corner_0 ... corner_{d-1} [leaf point_id coord_0 ... coord_{d-1}]
// ASCII decimal, newline after every line. Two trees serialize to the same
// bytes exactly when they have the same shape and points.
std::string canonical_serialize(const CompressedQuadtree& tree);

// Rebuild a tree from its canonical serialization. The geometry config must
// match the one the tree was built with (the text does not carry it).
CompressedQuadtree deserialize_tree(std::string_view text,
                                    const GeometryConfig& cfg);

// Structural audit. Returns human-readable violations, empty when the tree
// satisfies every invariant: canonical shape, partition of the cube by
// nonempty tiles (checked on `partition_samples` random lattice points),
// conflict lists partitioning the uninserted points, back-pointer agreement,
// and the linear node-count bound.
std::vector<std::string> validate(const CompressedQuadtree& tree,
                                  int partition_samples = 1000,
                                  std::uint64_t seed = 0x5eed);

}  // namespace cqt
