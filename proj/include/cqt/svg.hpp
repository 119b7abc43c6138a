#pragma once

#include <string>

#include "cqt/quadtree.hpp"

namespace cqt {

// Planar debug rendering: every node's cell as an outlined square, the
// region of each compressed edge shaded, stored points as dots. Lattice y
// grows upward, so the image is flipped into SVG's coordinate system.
// Throws DomainError for dimensions other than 2.
std::string render_svg(const CompressedQuadtree& tree);

}  // namespace cqt
