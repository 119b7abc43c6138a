#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cqt/builder.hpp"
#include "cqt/pointfile.hpp"
#include "cqt/pointgen.hpp"
#include "cqt/svg.hpp"
#include "doctest.h"

using namespace cqt;

namespace {

GeometryConfig make_config(int dim, int bits) {
  GeometryConfig cfg;
  cfg.dim = dim;
  cfg.resolution_bits = bits;
  return cfg;
}

std::size_t count_occurrences(const std::string& text, const std::string& what) {
  std::size_t count = 0;
  std::size_t pos = 0;
  while ((pos = text.find(what, pos)) != std::string::npos) {
    ++count;
    pos += what.size();
  }
  return count;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("point text parses rows, comments, and blanks") {
  const auto set = parse_point_text(
      "# header\n"
      "\n"
      "0.25 0.5\n"
      "  0.75\t0.125  \n"
      "# trailing comment\n"
      "0.1 0.2");
  CHECK(set.dim == 2);
  REQUIRE(set.size() == 3);
  CHECK(set.values == std::vector<double>{0.25, 0.5, 0.75, 0.125, 0.1, 0.2});
}

TEST_CASE("point text adopts the arity of the first row") {
  const auto three = parse_point_text("0.1 0.2 0.3\n0.4 0.5 0.6\n");
  CHECK(three.dim == 3);
  CHECK(three.size() == 2);

  const auto one = parse_point_text("0.5\n0.25\n0.125\n");
  CHECK(one.dim == 1);
  CHECK(one.size() == 3);

  const auto empty = parse_point_text("# nothing\n");
  CHECK(empty.dim == 2);
  CHECK(empty.size() == 0);
}

TEST_CASE("point text rejects malformed rows") {
  CHECK_THROWS_WITH_AS(parse_point_text("0.1 0.2\n0.3\n"),
                       doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_WITH_AS(parse_point_text("0.1 0.2\n0.3 zap\n"),
                       doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_AS(parse_point_text("1e999 0.5\n"), ParseError);
  CHECK_THROWS_AS(parse_point_text("0.1 0.2 0.3\n0.1 0.2\n"), ParseError);
}

TEST_CASE("point files round-trip doubles exactly") {
  RealPointSet set;
  set.dim = 2;
  set.values = {0.1, 1.0 / 3.0, std::nextafter(1.0, 0.0), 0.0,
                0.12345678901234567, 0.875};

  const std::string text = format_point_file(set, "three points");
  CHECK(text.substr(0, 2) == "# ");
  const auto parsed = parse_point_text(text);
  CHECK(parsed.dim == 2);
  CHECK(parsed.values == set.values);
}

TEST_CASE("point files survive the disk") {
  RealPointSet set;
  set.dim = 3;
  set.values = {0.25, 0.5, 0.75, 0.1, 0.2, 0.3};
  const std::string path = temp_path("cqt_io_roundtrip.txt");
  write_point_file(path, set, "disk check");
  const auto back = read_point_file(path);
  CHECK(back.dim == 3);
  CHECK(back.values == set.values);
  std::filesystem::remove(path);
}

TEST_CASE("missing files raise parse errors") {
  CHECK_THROWS_AS(read_text_file("/nonexistent/cqt/file.txt"), ParseError);
  CHECK_THROWS_AS(write_text_file("/nonexistent/cqt/file.txt", "x"),
                  ParseError);
}

TEST_CASE("uniform generation is deterministic and in range") {
  const auto a = generate_uniform(100, 2, 7);
  const auto b = generate_uniform(100, 2, 7);
  const auto c = generate_uniform(100, 2, 8);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  CHECK(a.size() == 100);
  CHECK(a.values.size() == 200);
  for (double v : a.values) {
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("clustered generation stays in the cube") {
  const auto set = generate_clustered(200, 2, 3, 0.01, 5);
  CHECK(set.size() == 200);
  for (double v : set.values) {
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
  CHECK(generate_clustered(200, 2, 3, 0.01, 5).values == set.values);
  CHECK_THROWS_AS(generate_clustered(10, 2, 0, 0.01, 5),
                  std::invalid_argument);
}

TEST_CASE("tight clusters force deep trees") {
  const auto cfg = make_config(2, 31);
  const auto set = generate_clustered(64, 2, 2, 1e-6, 99);
  BuildConfig config;
  config.geometry = cfg;
  config.geometry.duplicates = DuplicatePolicy::kDeduplicate;
  const auto result = build(set, config);
  CHECK(result.tree.max_level() > 10);
  CHECK(result.tree.compressed_edge_count() >= 1);
}

TEST_CASE("distinct lattice generation delivers what it says") {
  const auto cfg = make_config(2, 4);
  const auto pts = generate_distinct_quantized(200, cfg, 3);  // 256 slots
  CHECK(pts.size() == 200);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(pts[i].id == i);
    for (Coord c : pts[i].coords) CHECK(c < 16);
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      CHECK(pts[i].coords != pts[j].coords);
    }
  }
  CHECK_THROWS_AS(generate_distinct_quantized(257, cfg, 3),
                  std::invalid_argument);
}

TEST_CASE("svg rendering is structurally sound") {
  const auto cfg = make_config(2, 8);
  std::vector<QuantizedPoint> pts{QuantizedPoint{{25, 25}, 0},
                                  QuantizedPoint{{30, 30}, 1}};
  const auto result = build_quantized(cfg, pts, 0);
  const std::string svg = render_svg(result.tree);

  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("viewBox=\"-8 -8 1040 1040\"") != std::string::npos);
  // One rect per node plus the white background.
  CHECK(count_occurrences(svg, "<rect") == result.tree.node_count() + 1);
  CHECK(count_occurrences(svg, "<circle") == 2);
  // The compressed root edge shades an annulus.
  CHECK(svg.find("fill-rule=\"evenodd\"") != std::string::npos);
  CHECK(svg.find("</svg>") == svg.size() - 7);
}

TEST_CASE("svg output does not depend on the construction path") {
  const auto cfg = make_config(2, 10);
  const auto pts = generate_distinct_quantized(40, cfg, 12);
  const auto built = build_quantized(cfg, pts, 3);
  const auto text = canonical_serialize(built.tree);
  const auto reloaded = deserialize_tree(text, cfg);
  CHECK(render_svg(built.tree) == render_svg(reloaded));
}

TEST_CASE("svg rendering rejects other dimensions") {
  const auto cfg = make_config(1, 8);
  CompressedQuadtree tree(cfg, {}, ConflictTracking::kNone);
  CHECK_THROWS_AS(render_svg(tree), DomainError);
}

TEST_CASE("empty trees still render a frame") {
  const auto cfg = make_config(2, 8);
  CompressedQuadtree tree(cfg, {}, ConflictTracking::kNone);
  const std::string svg = render_svg(tree);
  CHECK(count_occurrences(svg, "<rect") == 2);  // background + root cell
  CHECK(count_occurrences(svg, "<circle") == 0);
}
