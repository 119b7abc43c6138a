#include "cqt/quadtree.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "cqt/rng.hpp"

namespace cqt {

CompressedQuadtree::CompressedQuadtree(GeometryConfig cfg,
                                       std::vector<QuantizedPoint> points,
                                       ConflictTracking tracking)
    : cfg_(cfg), points_(std::move(points)), tracking_(tracking) {
  cfg_.check();
  for (const QuantizedPoint& p : points_) {
    if (static_cast<int>(p.coords.size()) != cfg_.dim) {
      throw DomainError("point " + std::to_string(p.id) + " has " +
                        std::to_string(p.coords.size()) +
                        " coordinates, expected " + std::to_string(cfg_.dim));
    }
    for (Coord c : p.coords) {
      if (c >= cfg_.lattice_side()) {
        throw DomainError("point " + std::to_string(p.id) +
                          " lies outside the lattice");
      }
    }
  }

  Node root_node;
  root_node.cell = CanonicalCell::unit_cube(cfg_.dim);
  nodes_.push_back(std::move(root_node));

  const std::size_t n = points_.size();
  point_node_.assign(n, kNoNode);
  point_slot_.assign(n, 0);
  if (tracking_ == ConflictTracking::kTracked) {
    nodes_[0].conflicts.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      nodes_[0].conflicts[i] = static_cast<PointIndex>(i);
      point_node_[i] = 0;
      point_slot_[i] = static_cast<std::uint32_t>(i);
    }
  }
}

bool CompressedQuadtree::is_inserted(PointIndex i) const {
  return point_node_[i] != kNoNode && point_slot_[i] == kStoredSlot;
}

Tile CompressedQuadtree::tile_of(NodeId id) const {
  const Node& n = nodes_[id];
  Tile tile;
  tile.outer = n.cell;
  tile.holes.reserve(n.children.size());
  for (const ChildLink& link : n.children) {
    tile.holes.push_back(nodes_[link.node].cell);
  }
  return tile;
}

NodeId CompressedQuadtree::locate_tile(const QuantizedPoint& p) const {
  NodeId cur = root();
  for (;;) {
    NodeId next = kNoNode;
    for (const ChildLink& link : nodes_[cur].children) {
      if (cell_contains(nodes_[link.node].cell, p, cfg_.resolution_bits)) {
        next = link.node;
        break;
      }
    }
    if (next == kNoNode) return cur;
    cur = next;
  }
}

NodeId CompressedQuadtree::allocate_node(CanonicalCell cell, NodeId parent) {
  Node n;
  n.cell = std::move(cell);
  n.parent = parent;
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

void CompressedQuadtree::add_child_link(NodeId parent, std::uint32_t quadrant,
                                        NodeId child) {
  auto& children = nodes_[parent].children;
  auto it = std::lower_bound(
      children.begin(), children.end(), quadrant,
      [](const ChildLink& l, std::uint32_t q) { return l.quadrant < q; });
  assert((it == children.end() || it->quadrant != quadrant) &&
         "quadrant already occupied");
  children.insert(it, ChildLink{quadrant, child});
}

void CompressedQuadtree::replace_child_link(NodeId parent,
                                            std::uint32_t quadrant,
                                            NodeId child) {
  for (ChildLink& link : nodes_[parent].children) {
    if (link.quadrant == quadrant) {
      link.node = child;
      return;
    }
  }
  assert(false && "no child in that quadrant");
}

void CompressedQuadtree::remove_conflict(NodeId node, std::uint32_t slot) {
  auto& list = nodes_[node].conflicts;
  const PointIndex last = list.back();
  list[slot] = last;
  list.pop_back();
  if (slot < list.size()) point_slot_[last] = slot;
}

void CompressedQuadtree::append_conflict(NodeId node, PointIndex p) {
  auto& list = nodes_[node].conflicts;
  point_node_[p] = node;
  point_slot_[p] = static_cast<std::uint32_t>(list.size());
  list.push_back(p);
}

void CompressedQuadtree::mark_stored(NodeId node, PointIndex p) {
  nodes_[node].stored_point = p;
  point_node_[p] = node;
  point_slot_[p] = kStoredSlot;
}

RestructureReport CompressedQuadtree::insert(PointIndex p) {
  RestructureReport report = insert_at(point_node_[p], p);
  redistribute(report);
  return report;
}

RestructureReport CompressedQuadtree::insert_at(NodeId v, PointIndex p) {
  assert(tracking_ == ConflictTracking::kTracked);
  assert(!is_inserted(p));
  assert(point_node_[p] == v && "point must sit in the host's conflict list");

  remove_conflict(v, point_slot_[p]);

  RestructureReport rep;
  rep.host = v;
  rep.conflict_count = static_cast<std::uint32_t>(nodes_[v].conflicts.size());

  const int L = cfg_.resolution_bits;
  // nodes_ may reallocate below; never hold a Node reference across an
  // allocate_node call.
  if (nodes_[v].is_leaf()) {
    if (!nodes_[v].stored_point.has_value()) {
      // Empty root leaf: the point settles there, the tile is unchanged.
      assert(v == root() && inserted_count_ == 0);
      mark_stored(v, p);
      ++inserted_count_;
      rep.kind = RestructureKind::kRootStore;
      rep.candidates[rep.candidate_count++] = v;
      return rep;
    }

    // Occupied leaf: split at the smallest cell around both points.
    rep.kind = RestructureKind::kLeafSplit;
    const PointIndex q = *nodes_[v].stored_point;
    const CanonicalCell c =
        smallest_common_cell(points_[p], points_[q], cfg_);
    assert(cell_contains_cell(nodes_[v].cell, c));

    NodeId split = v;
    bool host_shrank = false;
    if (v == root() && !c.is_unit_cube()) {
      // The root's cell is pinned to the unit cube, so the split point gets
      // its own node hanging off the root by a compressed edge.
      NodeId u = allocate_node(c, v);
      add_child_link(v, child_quadrant(nodes_[v].cell, c), u);
      nodes_[v].stored_point.reset();
      rep.new_nodes[rep.new_count++] = u;
      split = u;
    } else {
      // Elsewhere the leaf itself becomes the split node; its cell tightens
      // to c (a no-op when they already coincide).
      host_shrank = (nodes_[v].cell != c);
      nodes_[v].cell = c;
      nodes_[v].stored_point.reset();
    }

    const std::uint32_t quad_q = quadrant_index(c, points_[q], L);
    const std::uint32_t quad_p = quadrant_index(c, points_[p], L);
    assert(quad_q != quad_p);
    NodeId leaf_q = allocate_node(child_cell(c, quad_q, L), split);
    add_child_link(split, quad_q, leaf_q);
    mark_stored(leaf_q, q);
    NodeId leaf_p = allocate_node(child_cell(c, quad_p, L), split);
    add_child_link(split, quad_p, leaf_p);
    mark_stored(leaf_p, p);
    ++inserted_count_;
    rep.new_nodes[rep.new_count++] = leaf_q;
    rep.new_nodes[rep.new_count++] = leaf_p;

    rep.candidates[rep.candidate_count++] = leaf_p;
    rep.candidates[rep.candidate_count++] = leaf_q;
    if (split != v) {
      rep.candidates[rep.candidate_count++] = split;
      rep.candidates[rep.candidate_count++] = v;
    } else {
      rep.candidates[rep.candidate_count++] = v;
      if (host_shrank) {
        // The strip between the old and the tightened cell now belongs to
        // the parent's tile.
        assert(v != root());
        rep.candidates[rep.candidate_count++] = nodes_[v].parent;
      }
    }
    return rep;
  }

  // Internal host: the point lies in its residual region or in the gap of a
  // compressed edge.
  const std::uint32_t quad = quadrant_index(nodes_[v].cell, points_[p], L);
  const NodeId w = nodes_[v].child_in(quad);
  if (w == kNoNode) {
    // Unoccupied quadrant: one fresh leaf filling it.
    rep.kind = RestructureKind::kQuadrantLeaf;
    NodeId leaf = allocate_node(child_cell(nodes_[v].cell, quad, L), v);
    add_child_link(v, quad, leaf);
    mark_stored(leaf, p);
    ++inserted_count_;
    rep.new_nodes[rep.new_count++] = leaf;
    rep.candidates[rep.candidate_count++] = leaf;
    rep.candidates[rep.candidate_count++] = v;
    return rep;
  }

  // Occupied quadrant but outside the child's cell: splice a node at the
  // smallest cell around the point and the child, and hang a leaf there.
  rep.kind = RestructureKind::kEdgeSplice;
  assert(!cell_contains(nodes_[w].cell, points_[p], L));
  const CanonicalCell c = smallest_common_cell(points_[p], nodes_[w].cell, cfg_);
  assert(cell_contains_cell(child_cell(nodes_[v].cell, quad, L), c));
  assert(c != nodes_[w].cell);

  NodeId u = allocate_node(c, v);
  replace_child_link(v, quad, u);
  nodes_[w].parent = u;
  add_child_link(u, child_quadrant(c, nodes_[w].cell), w);
  const std::uint32_t quad_p = quadrant_index(c, points_[p], L);
  NodeId leaf_p = allocate_node(child_cell(c, quad_p, L), u);
  add_child_link(u, quad_p, leaf_p);
  mark_stored(leaf_p, p);
  ++inserted_count_;
  rep.new_nodes[rep.new_count++] = u;
  rep.new_nodes[rep.new_count++] = leaf_p;

  rep.candidates[rep.candidate_count++] = leaf_p;
  rep.candidates[rep.candidate_count++] = u;
  rep.candidates[rep.candidate_count++] = v;
  return rep;
}

void CompressedQuadtree::redistribute(const RestructureReport& report) {
  assert(tracking_ == ConflictTracking::kTracked);
  if (report.candidate_count <= 1) return;  // the host kept its whole tile

  const int L = cfg_.resolution_bits;
  const NodeId host = report.host;
  auto& list = nodes_[host].conflicts;
  std::size_t i = 0;
  while (i < list.size()) {
    const PointIndex x = list[i];
    const QuantizedPoint& pt = points_[x];
    // Candidates are ordered deepest first and their cells are nested along
    // that order (leaves inside the spliced node inside the host inside the
    // parent), so the first candidate whose cell contains the point is the
    // one whose tile owns it. Every point here came from the host's old
    // tile, which the candidate tiles partition.
    NodeId target = kNoNode;
    for (NodeId cand : report.candidate_nodes()) {
      if (cell_contains(nodes_[cand].cell, pt, L)) {
        target = cand;
        break;
      }
    }
    if (target == kNoNode) {
      throw std::logic_error(
          "conflict point " + std::to_string(points_[x].id) +
          " lies in no candidate tile after restructuring");
    }
    assert(tile_contains(tile_of(target), pt, L));
    if (target == host) {
      ++i;
      continue;
    }
    remove_conflict(host, static_cast<std::uint32_t>(i));
    append_conflict(target, x);
  }
}

NodeId CompressedQuadtree::attach_child(NodeId parent, std::uint32_t quadrant,
                                        CanonicalCell cell) {
  assert(tracking_ == ConflictTracking::kNone);
  assert(quadrant < cfg_.quadrant_count());
  assert(static_cast<int>(cell.level) <= cfg_.resolution_bits);
  assert(cell_contains_cell(
      child_cell(nodes_[parent].cell, quadrant, cfg_.resolution_bits), cell));
  NodeId id = allocate_node(std::move(cell), parent);
  add_child_link(parent, quadrant, id);
  return id;
}

void CompressedQuadtree::place_point(NodeId leaf, PointIndex p) {
  assert(tracking_ == ConflictTracking::kNone);
  assert(nodes_[leaf].is_leaf());
  assert(!nodes_[leaf].stored_point.has_value());
  assert(!is_inserted(p));
  assert(cell_contains(nodes_[leaf].cell, points_[p], cfg_.resolution_bits));
  mark_stored(leaf, p);
  ++inserted_count_;
}

std::uint32_t CompressedQuadtree::max_level() const {
  std::uint32_t m = 0;
  for (const Node& n : nodes_) m = std::max(m, n.cell.level);
  return m;
}

std::size_t CompressedQuadtree::compressed_edge_count() const {
  std::size_t count = 0;
  for (const Node& n : nodes_) {
    for (const ChildLink& link : n.children) {
      if (nodes_[link.node].cell.level > n.cell.level + 1) ++count;
    }
  }
  return count;
}

namespace {

void append_number(std::string& out, std::uint64_t value) {
  out += std::to_string(value);
}

}  // namespace

std::string canonical_serialize(const CompressedQuadtree& tree) {
  std::string out;
  std::vector<NodeId> stack;
  stack.push_back(tree.root());
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    const Node& n = tree.node(id);
    append_number(out, n.cell.level);
    for (Coord c : n.cell.corner) {
      out += ' ';
      append_number(out, c);
    }
    if (n.stored_point.has_value()) {
      const QuantizedPoint& p = tree.point(*n.stored_point);
      out += " leaf ";
      append_number(out, p.id);
      for (Coord c : p.coords) {
        out += ' ';
        append_number(out, c);
      }
    }
    out += '\n';
    // Children are kept sorted by quadrant; push in reverse so the smallest
    // quadrant is emitted first.
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
      stack.push_back(it->node);
    }
  }
  return out;
}

namespace {

struct ParsedLine {
  CanonicalCell cell;
  bool has_point = false;
  std::uint32_t point_id = 0;
  std::vector<Coord> point_coords;
};

std::uint64_t parse_u64(std::string_view token, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": expected an unsigned integer, got '" +
                     std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    if (pos > start) tokens.push_back(line.substr(start, pos - start));
  }
  return tokens;
}

}  // namespace

CompressedQuadtree deserialize_tree(std::string_view text,
                                    const GeometryConfig& cfg) {
  cfg.check();
  const std::size_t d = static_cast<std::size_t>(cfg.dim);
  const int L = cfg.resolution_bits;

  std::vector<ParsedLine> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto tokens = split_tokens(raw);
    if (tokens.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": blank line");
    }
    ParsedLine parsed;
    if (tokens.size() != d + 1 && tokens.size() != 2 * d + 3) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(d + 1) + " or " +
                       std::to_string(2 * d + 3) + " tokens, got " +
                       std::to_string(tokens.size()));
    }
    const std::uint64_t level = parse_u64(tokens[0], line_no);
    if (level > static_cast<std::uint64_t>(L)) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": level exceeds the lattice resolution");
    }
    parsed.cell.level = static_cast<std::uint32_t>(level);
    parsed.cell.corner.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
      parsed.cell.corner[k] = parse_u64(tokens[1 + k], line_no);
      if (level < 64 && parsed.cell.corner[k] >> level != 0) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": corner outside the level grid");
      }
    }
    if (tokens.size() == 2 * d + 3) {
      if (tokens[d + 1] != "leaf") {
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected 'leaf' marker, got '" +
                         std::string(tokens[d + 1]) + "'");
      }
      parsed.has_point = true;
      parsed.point_id =
          static_cast<std::uint32_t>(parse_u64(tokens[d + 2], line_no));
      parsed.point_coords.resize(d);
      for (std::size_t k = 0; k < d; ++k) {
        parsed.point_coords[k] = parse_u64(tokens[d + 3 + k], line_no);
        if (parsed.point_coords[k] >= cfg.lattice_side()) {
          throw ParseError("line " + std::to_string(line_no) +
                           ": point coordinate outside the lattice");
        }
      }
    }
    lines.push_back(std::move(parsed));
  }
  if (lines.empty()) {
    throw ParseError("empty tree text");
  }
  if (lines[0].cell.level != 0) {
    throw ParseError("line 1: root must be the unit cube");
  }

  std::vector<QuantizedPoint> points;
  for (const ParsedLine& line : lines) {
    if (line.has_point) {
      points.push_back(QuantizedPoint{line.point_coords, line.point_id});
    }
  }

  CompressedQuadtree tree(cfg, std::move(points), ConflictTracking::kNone);

  // Preorder reconstruction: a node's parent is the deepest open ancestor
  // whose cell contains it.
  struct OpenNode {
    NodeId id;
    std::uint32_t last_quadrant;
    bool has_child;
  };
  std::vector<OpenNode> open;
  open.push_back({tree.root(), 0, false});
  PointIndex next_point = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const ParsedLine& line = lines[i];
    NodeId id;
    if (i == 0) {
      id = tree.root();
    } else {
      while (!open.empty() &&
             !cell_contains_cell(tree.node(open.back().id).cell, line.cell)) {
        open.pop_back();
      }
      if (open.empty() || tree.node(open.back().id).cell == line.cell) {
        throw ParseError("line " + std::to_string(i + 1) +
                         ": node does not nest under the preceding ones");
      }
      OpenNode& parent = open.back();
      if (tree.node(parent.id).stored_point.has_value()) {
        throw ParseError("line " + std::to_string(i + 1) +
                         ": node nests under a leaf line");
      }
      const std::uint32_t quad =
          child_quadrant(tree.node(parent.id).cell, line.cell);
      if (parent.has_child && quad <= parent.last_quadrant) {
        throw ParseError("line " + std::to_string(i + 1) +
                         ": children out of quadrant order");
      }
      id = tree.attach_child(parent.id, quad, line.cell);
      parent.last_quadrant = quad;
      parent.has_child = true;
      open.push_back({id, 0, false});
    }
    if (line.has_point) {
      tree.place_point(id, next_point);
      ++next_point;
    }
  }
  return tree;
}

std::vector<std::string> validate(const CompressedQuadtree& tree,
                                  int partition_samples, std::uint64_t seed) {
  std::vector<std::string> violations;
  const GeometryConfig& cfg = tree.config();
  const int L = cfg.resolution_bits;
  const std::size_t node_count = tree.node_count();
  auto complain = [&violations](std::string text) {
    violations.push_back(std::move(text));
  };

  // Reachability and per-node structure.
  std::vector<bool> reachable(node_count, false);
  std::vector<NodeId> stack{tree.root()};
  reachable[tree.root()] = true;
  if (tree.node(tree.root()).parent != kNoNode) {
    complain("root has a parent");
  }
  if (!tree.node(tree.root()).cell.is_unit_cube()) {
    complain("root cell is not the unit cube");
  }
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    const Node& n = tree.node(id);

    if (n.cell.level > static_cast<std::uint32_t>(L)) {
      complain("node " + std::to_string(id) + " deeper than the lattice");
    }
    for (Coord c : n.cell.corner) {
      if (n.cell.level < 64 && (c >> n.cell.level) != 0) {
        complain("node " + std::to_string(id) + " corner outside its level");
      }
    }

    if (n.is_leaf()) {
      if (!n.stored_point.has_value() && tree.inserted_count() > 0) {
        complain("leaf " + std::to_string(id) + " stores no point");
      }
      if (id != tree.root() && n.parent != kNoNode) {
        const Node& parent = tree.node(n.parent);
        std::uint32_t quad = cfg.quadrant_count();
        for (const ChildLink& link : parent.children) {
          if (link.node == id) quad = link.quadrant;
        }
        if (quad == cfg.quadrant_count()) {
          complain("leaf " + std::to_string(id) +
                   " is not linked from its parent");
        } else if (n.cell != child_cell(parent.cell, quad, L)) {
          complain("leaf " + std::to_string(id) +
                   " does not fill its parent quadrant");
        }
      }
    } else {
      if (n.stored_point.has_value()) {
        complain("internal node " + std::to_string(id) + " stores a point");
      }
      if (id != tree.root() && n.children.size() < 2) {
        complain("internal node " + std::to_string(id) +
                 " has a single child");
      }
      std::uint32_t prev_quad = 0;
      bool first = true;
      for (const ChildLink& link : n.children) {
        if (!first && link.quadrant <= prev_quad) {
          complain("children of node " + std::to_string(id) +
                   " are out of quadrant order");
        }
        prev_quad = link.quadrant;
        first = false;
        if (link.quadrant >= cfg.quadrant_count()) {
          complain("node " + std::to_string(id) + " has quadrant " +
                   std::to_string(link.quadrant) + " out of range");
          continue;
        }
        const Node& child = tree.node(link.node);
        if (child.parent != id) {
          complain("node " + std::to_string(link.node) +
                   " has a wrong parent pointer");
        }
        if (!cell_contains_cell(child_cell(n.cell, link.quadrant, L),
                                child.cell)) {
          complain("node " + std::to_string(link.node) +
                   " is not inside its quadrant of node " + std::to_string(id));
        }
        if (!reachable[link.node]) {
          reachable[link.node] = true;
          stack.push_back(link.node);
        }
      }
    }

    if (n.stored_point.has_value()) {
      const PointIndex p = *n.stored_point;
      if (!cell_contains(n.cell, tree.point(p), L)) {
        complain("stored point " + std::to_string(tree.point(p).id) +
                 " lies outside the cell of node " + std::to_string(id));
      }
      if (tree.point_location(p) != id || !tree.is_inserted(p)) {
        complain("stored point " + std::to_string(tree.point(p).id) +
                 " has a stale location record");
      }
    }
  }
  for (std::size_t id = 0; id < node_count; ++id) {
    if (!reachable[id]) {
      complain("node " + std::to_string(id) + " is unreachable from the root");
    }
  }

  // Point bookkeeping: stored points and conflict lists partition the arena.
  std::size_t stored_seen = 0;
  std::size_t conflict_seen = 0;
  for (std::size_t id = 0; id < node_count; ++id) {
    const Node& n = tree.node(id);
    if (n.stored_point.has_value()) ++stored_seen;
    const Tile tile = tree.tile_of(static_cast<NodeId>(id));
    for (std::size_t slot = 0; slot < n.conflicts.size(); ++slot) {
      ++conflict_seen;
      const PointIndex p = n.conflicts[slot];
      if (tree.is_inserted(p)) {
        complain("inserted point " + std::to_string(tree.point(p).id) +
                 " still sits in a conflict list");
      }
      if (tree.point_location(p) != static_cast<NodeId>(id)) {
        complain("conflict point " + std::to_string(tree.point(p).id) +
                 " has a stale node record");
      }
      if (!tile_contains(tile, tree.point(p), L)) {
        complain("conflict point " + std::to_string(tree.point(p).id) +
                 " lies outside the tile of node " + std::to_string(id));
      }
    }
  }
  if (stored_seen != tree.inserted_count()) {
    complain("inserted count disagrees with stored points");
  }
  if (conflict_seen + tree.inserted_count() != tree.points().size()) {
    complain("conflict lists do not cover the uninserted points");
  }

  if (tree.inserted_count() > 0 &&
      node_count > 2 * tree.inserted_count() + 1) {
    complain("node count " + std::to_string(node_count) +
             " exceeds twice the point count plus one");
  }

  // Partition check: random lattice points must land in exactly one tile,
  // and descent must find that tile.
  Rng rng(seed);
  for (int s = 0; s < partition_samples; ++s) {
    QuantizedPoint sample;
    sample.coords.resize(static_cast<std::size_t>(cfg.dim));
    for (auto& c : sample.coords) c = rng.next_below(cfg.lattice_side());
    NodeId owner = kNoNode;
    int owners = 0;
    for (std::size_t id = 0; id < node_count; ++id) {
      if (tile_contains(tree.tile_of(static_cast<NodeId>(id)), sample, L)) {
        owner = static_cast<NodeId>(id);
        ++owners;
      }
    }
    if (owners != 1) {
      complain("sample point lies in " + std::to_string(owners) +
               " tiles instead of exactly one");
      continue;
    }
    if (tree.locate_tile(sample) != owner) {
      complain("descent disagrees with the owning tile of a sample point");
    }
  }

  return violations;
}

}  // namespace cqt
