#include "cqt/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace cqt {

namespace {

constexpr double kCanvas = 1024.0;

struct Box {
  double x, y, w;  // SVG coordinates, y already flipped
};

Box cell_box(const CanonicalCell& cell) {
  const double side = kCanvas * std::exp2(-static_cast<double>(cell.level));
  const double x = static_cast<double>(cell.corner[0]) * side;
  const double y_up = static_cast<double>(cell.corner[1]) * side;
  return Box{x, kCanvas - y_up - side, side};
}

void append_number(std::string& out, double v) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%.4f", v);
  out += buffer;
}

void append_rect(std::string& out, const Box& b, const char* extra) {
  out += "  <rect x=\"";
  append_number(out, b.x);
  out += "\" y=\"";
  append_number(out, b.y);
  out += "\" width=\"";
  append_number(out, b.w);
  out += "\" height=\"";
  append_number(out, b.w);
  out += "\" ";
  out += extra;
  out += "/>\n";
}

}  // namespace

std::string render_svg(const CompressedQuadtree& tree) {
  if (tree.config().dim != 2) {
    throw DomainError("rendering supports dimension 2 only");
  }
  const int L = tree.config().resolution_bits;

  // Gather geometry first and sort it so the bytes do not depend on how the
  // tree was built.
  std::vector<CanonicalCell> cells;
  std::vector<std::pair<CanonicalCell, CanonicalCell>> shades;  // region, hole
  std::vector<std::pair<double, double>> dots;
  for (NodeId id = 0; id < tree.node_count(); ++id) {
    const Node& n = tree.node(id);
    cells.push_back(n.cell);
    for (const ChildLink& link : n.children) {
      const CanonicalCell& child = tree.node(link.node).cell;
      if (child.level > n.cell.level + 1) {
        const CanonicalCell outer =
            id == tree.root() && tree.node(id).children.size() == 1
                ? n.cell
                : child_cell(n.cell, link.quadrant, L);
        shades.emplace_back(outer, child);
      }
    }
    if (n.stored_point.has_value()) {
      const auto& coords = tree.point(*n.stored_point).coords;
      const double unit = std::exp2(-static_cast<double>(L));
      const double x = (static_cast<double>(coords[0]) + 0.5) * unit * kCanvas;
      const double y = (static_cast<double>(coords[1]) + 0.5) * unit * kCanvas;
      dots.emplace_back(x, kCanvas - y);
    }
  }
  std::sort(cells.begin(), cells.end());
  std::sort(shades.begin(), shades.end());
  std::sort(dots.begin(), dots.end());

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-8 -8 1040 1040\" "
         "width=\"1040\" height=\"1040\">\n";
  out += "  <rect x=\"0\" y=\"0\" width=\"1024\" height=\"1024\" "
         "fill=\"white\" stroke=\"none\"/>\n";

  for (const auto& [outer, hole] : shades) {
    const Box o = cell_box(outer);
    const Box h = cell_box(hole);
    out += "  <path fill=\"#9ecae1\" fill-opacity=\"0.55\" fill-rule=\"evenodd\" d=\"M";
    append_number(out, o.x);
    out += ' ';
    append_number(out, o.y);
    out += " h";
    append_number(out, o.w);
    out += " v";
    append_number(out, o.w);
    out += " h-";
    append_number(out, o.w);
    out += " Z M";
    append_number(out, h.x);
    out += ' ';
    append_number(out, h.y);
    out += " h";
    append_number(out, h.w);
    out += " v";
    append_number(out, h.w);
    out += " h-";
    append_number(out, h.w);
    out += " Z\"/>\n";
  }

  for (const CanonicalCell& cell : cells) {
    append_rect(out, cell_box(cell),
                "fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"");
  }

  for (const auto& [x, y] : dots) {
    out += "  <circle cx=\"";
    append_number(out, x);
    out += "\" cy=\"";
    append_number(out, y);
    out += "\" r=\"3\" fill=\"#d62728\"/>\n";
  }

  out += "</svg>\n";
  return out;
}

}  // namespace cqt
