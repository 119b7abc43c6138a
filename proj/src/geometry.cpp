#include "cqt/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <unordered_map>

namespace cqt {
namespace {

// Largest set bit position over all per-axis XORs, or -1 if the corners
// coincide. Determines how deep a common cell can reach.
int highest_differing_bit(std::span<const Coord> a, std::span<const Coord> b) {
  int h = -1;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Coord diff = a[k] ^ b[k];
    if (diff != 0) h = std::max(h, static_cast<int>(std::bit_width(diff)) - 1);
  }
  return h;
}

// Core of smallest_common_cell on lattice corners with per-argument level
// caps (a point is a ref at level L).
CanonicalCell common_cell_of_refs(std::span<const Coord> a, int level_a,
                                  std::span<const Coord> b, int level_b,
                                  const GeometryConfig& cfg) {
  const int L = cfg.resolution_bits;
  const int h = highest_differing_bit(a, b);
  const int level = std::min({level_a, level_b, L - 1 - h});
  assert(level >= 0);
  CanonicalCell cell;
  cell.level = static_cast<std::uint32_t>(level);
  cell.corner.resize(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    cell.corner[k] = a[k] >> (L - level);
  }
  return cell;
}

std::vector<Coord> lattice_corner(const CanonicalCell& cell, int L) {
  std::vector<Coord> out(cell.corner.size());
  for (std::size_t k = 0; k < cell.corner.size(); ++k) {
    out[k] = cell.corner[k] << (L - static_cast<int>(cell.level));
  }
  return out;
}

struct CoordsHash {
  std::size_t operator()(const std::vector<Coord>& v) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Coord c : v) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

void GeometryConfig::check() const {
  if (dim < 1 || dim > 24) {
    throw std::invalid_argument("dim must be in [1, 24], got " +
                                std::to_string(dim));
  }
  if (resolution_bits < 1 || resolution_bits > 62) {
    throw std::invalid_argument("resolution_bits must be in [1, 62], got " +
                                std::to_string(resolution_bits));
  }
}

QuantizedPoint quantize(std::span<const double> xs, const GeometryConfig& cfg,
                        std::uint32_t id) {
  assert(static_cast<int>(xs.size()) == cfg.dim);
  const double scale = std::exp2(cfg.resolution_bits);
  QuantizedPoint p;
  p.id = id;
  p.coords.resize(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double x = xs[k];
    if (!(x >= 0.0) || !(x < 1.0)) {
      throw DomainError("coordinate " + std::to_string(x) + " of point " +
                        std::to_string(id) + " is outside [0, 1)");
    }
    // The product may round up to 2^L for x just below 1; clamp to the last
    // lattice cell so the result always lies on the grid.
    const double scaled = std::floor(x * scale);
    Coord c = static_cast<Coord>(scaled);
    if (c >= cfg.lattice_side()) c = cfg.lattice_side() - 1;
    p.coords[k] = c;
  }
  return p;
}

std::vector<QuantizedPoint> quantize_points(const RealPointSet& points,
                                            const GeometryConfig& cfg) {
  cfg.check();
  if (points.dim != cfg.dim) {
    throw DomainError("point set has dim " + std::to_string(points.dim) +
                      " but config expects " + std::to_string(cfg.dim));
  }
  std::vector<QuantizedPoint> out;
  out.reserve(points.size());
  std::unordered_map<std::vector<Coord>, std::uint32_t, CoordsHash> seen;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::uint32_t id = static_cast<std::uint32_t>(i);
    QuantizedPoint p = quantize(points.point(i), cfg, id);
    auto [it, fresh] = seen.try_emplace(p.coords, id);
    if (!fresh) {
      if (cfg.duplicates == DuplicatePolicy::kReject) {
        throw DomainError("points " + std::to_string(it->second) + " and " +
                          std::to_string(id) +
                          " quantize to the same lattice position "
                          "(duplicate policy: reject)");
      }
      continue;  // kDeduplicate keeps the first occurrence
    }
    out.push_back(std::move(p));
  }
  return out;
}

bool cell_contains(const CanonicalCell& cell, const QuantizedPoint& p,
                   int resolution_bits) {
  const int shift = resolution_bits - static_cast<int>(cell.level);
  assert(shift >= 0);
  for (std::size_t k = 0; k < cell.corner.size(); ++k) {
    if ((p.coords[k] >> shift) != cell.corner[k]) return false;
  }
  return true;
}

bool cell_contains_cell(const CanonicalCell& outer, const CanonicalCell& inner) {
  if (inner.level < outer.level) return false;
  const std::uint32_t shift = inner.level - outer.level;
  for (std::size_t k = 0; k < outer.corner.size(); ++k) {
    if ((inner.corner[k] >> shift) != outer.corner[k]) return false;
  }
  return true;
}

std::uint32_t quadrant_index(const CanonicalCell& cell, const QuantizedPoint& p,
                             int resolution_bits) {
  assert(static_cast<int>(cell.level) < resolution_bits &&
         "cell at full resolution cannot be subdivided");
  assert(cell_contains(cell, p, resolution_bits));
  const int bit = resolution_bits - static_cast<int>(cell.level) - 1;
  std::uint32_t q = 0;
  for (std::size_t k = 0; k < cell.corner.size(); ++k) {
    q |= static_cast<std::uint32_t>((p.coords[k] >> bit) & 1) << k;
  }
  return q;
}

std::uint32_t child_quadrant(const CanonicalCell& parent,
                             const CanonicalCell& descendant) {
  assert(descendant.level > parent.level);
  assert(cell_contains_cell(parent, descendant));
  const std::uint32_t shift = descendant.level - parent.level - 1;
  std::uint32_t q = 0;
  for (std::size_t k = 0; k < parent.corner.size(); ++k) {
    q |= static_cast<std::uint32_t>((descendant.corner[k] >> shift) & 1) << k;
  }
  return q;
}

CanonicalCell child_cell(const CanonicalCell& cell, std::uint32_t quadrant,
                         int resolution_bits) {
  assert(static_cast<int>(cell.level) < resolution_bits &&
         "cell at full resolution cannot be subdivided");
  (void)resolution_bits;
  CanonicalCell child;
  child.level = cell.level + 1;
  child.corner.resize(cell.corner.size());
  for (std::size_t k = 0; k < cell.corner.size(); ++k) {
    child.corner[k] = (cell.corner[k] << 1) | ((quadrant >> k) & 1);
  }
  return child;
}

CanonicalCell smallest_common_cell(const QuantizedPoint& a,
                                   const QuantizedPoint& b,
                                   const GeometryConfig& cfg) {
  if (a.coords == b.coords) {
    throw DomainError(
        "smallest_common_cell of two identical lattice points is undefined");
  }
  const int L = cfg.resolution_bits;
  return common_cell_of_refs(a.coords, L, b.coords, L, cfg);
}

CanonicalCell smallest_common_cell(const QuantizedPoint& p,
                                   const CanonicalCell& cell,
                                   const GeometryConfig& cfg) {
  const int L = cfg.resolution_bits;
  const std::vector<Coord> corner = lattice_corner(cell, L);
  return common_cell_of_refs(p.coords, L, corner,
                             static_cast<int>(cell.level), cfg);
}

CanonicalCell smallest_common_cell(const CanonicalCell& a,
                                   const CanonicalCell& b,
                                   const GeometryConfig& cfg) {
  const int L = cfg.resolution_bits;
  const std::vector<Coord> ca = lattice_corner(a, L);
  const std::vector<Coord> cb = lattice_corner(b, L);
  return common_cell_of_refs(ca, static_cast<int>(a.level), cb,
                             static_cast<int>(b.level), cfg);
}

bool tile_contains(const Tile& tile, const QuantizedPoint& p,
                   int resolution_bits) {
  if (!cell_contains(tile.outer, p, resolution_bits)) return false;
  for (const CanonicalCell& hole : tile.holes) {
    if (cell_contains(hole, p, resolution_bits)) return false;
  }
  return true;
}

}  // namespace cqt
