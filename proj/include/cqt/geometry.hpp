#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cqt {

using Coord = std::uint64_t;
using PointIndex = std::uint32_t;

// Raised for bad user-supplied values: coordinates outside [0,1), duplicate
// points under the reject policy, degenerate arguments.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Raised for malformed text input (point files, serialized trees).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

enum class DuplicatePolicy { kReject, kDeduplicate };

// Lattice parameters shared by all geometric operations. Real coordinates in
// [0,1)^dim are snapped once to an integer grid with 2^resolution_bits cells
// per axis; everything downstream is exact integer arithmetic.
struct GeometryConfig {
  int dim = 2;
  int resolution_bits = 31;
  DuplicatePolicy duplicates = DuplicatePolicy::kReject;

  void check() const;  // throws std::invalid_argument on bad parameters

  Coord lattice_side() const { return Coord{1} << resolution_bits; }
  std::uint32_t quadrant_count() const { return std::uint32_t{1} << dim; }
};

// A point snapped to the lattice. `id` is the ordinal of the point in the
// original input and survives shuffling and deduplication untouched.
struct QuantizedPoint {
  std::vector<Coord> coords;
  std::uint32_t id = 0;

  bool operator==(const QuantizedPoint&) const = default;
};

// Flat row-major container for raw real-valued points.
struct RealPointSet {
  int dim = 2;
  std::vector<double> values;

  std::size_t size() const {
    return dim > 0 ? values.size() / static_cast<std::size_t>(dim) : 0;
  }
  std::span<const double> point(std::size_t i) const {
    return {values.data() + i * static_cast<std::size_t>(dim),
            static_cast<std::size_t>(dim)};
  }
  void append(std::span<const double> p) {
    values.insert(values.end(), p.begin(), p.end());
  }
};

// Dyadic cell of the hierarchical grid. A cell at level v subdivides the
// unit cube into 2^v slabs per axis; `corner` is measured in cells of that
// level, so corner[k] < 2^level. The denoted region is half open:
// [corner*side, (corner+1)*side) per axis with side = 2^(L-level) lattice
// units.
struct CanonicalCell {
  std::uint32_t level = 0;
  std::vector<Coord> corner;

  bool operator==(const CanonicalCell&) const = default;
  auto operator<=>(const CanonicalCell&) const = default;

  static CanonicalCell unit_cube(int dim) {
    return CanonicalCell{0, std::vector<Coord>(static_cast<std::size_t>(dim), 0)};
  }
  bool is_unit_cube() const { return level == 0; }
};

// Region owned by one tree node: `outer` minus the union of `holes`. Holes
// are strict descendants of `outer` with pairwise disjoint regions. No holes
// is a plain square; one hole is the annulus of a compressed edge; several
// holes arise at nodes whose children do not fill the cell.
struct Tile {
  CanonicalCell outer;
  std::vector<CanonicalCell> holes;
};

// Snap one real point to the lattice: coords[k] = floor(x[k] * 2^L).
// Coordinates outside [0,1) raise DomainError.
QuantizedPoint quantize(std::span<const double> xs, const GeometryConfig& cfg,
                        std::uint32_t id = 0);

// Quantize a whole set, applying cfg.duplicates to points that collide on
// the lattice: kReject raises DomainError naming the colliding ordinals,
// kDeduplicate keeps the first occurrence of each lattice position.
std::vector<QuantizedPoint> quantize_points(const RealPointSet& points,
                                            const GeometryConfig& cfg);

// Half-open containment test of a lattice point in a cell.
bool cell_contains(const CanonicalCell& cell, const QuantizedPoint& p,
                   int resolution_bits);

// True when `inner` is `outer` or a descendant of it.
bool cell_contains_cell(const CanonicalCell& outer, const CanonicalCell& inner);

// Index of the child cell of `cell` containing p. Bit k of the result is 1
// exactly when p lies in the upper half of dimension k. Requires p inside
// `cell` and cell.level < resolution_bits.
std::uint32_t quadrant_index(const CanonicalCell& cell, const QuantizedPoint& p,
                             int resolution_bits);

// Which quadrant of `parent` contains `descendant` (a strict descendant).
std::uint32_t child_quadrant(const CanonicalCell& parent,
                             const CanonicalCell& descendant);

// The level+1 cell in the given quadrant of `cell`.
CanonicalCell child_cell(const CanonicalCell& cell, std::uint32_t quadrant,
                         int resolution_bits);

// Smallest canonical cell containing both arguments, computed from the
// common bit prefix of the lattice coordinates per axis (no interleaving).
// Two identical points are degenerate and raise DomainError.
CanonicalCell smallest_common_cell(const QuantizedPoint& a,
                                   const QuantizedPoint& b,
                                   const GeometryConfig& cfg);
CanonicalCell smallest_common_cell(const QuantizedPoint& p,
                                   const CanonicalCell& cell,
                                   const GeometryConfig& cfg);
CanonicalCell smallest_common_cell(const CanonicalCell& a,
                                   const CanonicalCell& b,
                                   const GeometryConfig& cfg);

// Membership in a tile: inside the outer cell and in none of the holes.
bool tile_contains(const Tile& tile, const QuantizedPoint& p,
                   int resolution_bits);

}  // namespace cqt
