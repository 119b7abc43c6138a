#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "cqt/builder.hpp"
#include "cqt/oracle.hpp"
#include "cqt/pointgen.hpp"
#include "cqt/rng.hpp"
#include "doctest.h"

using namespace cqt;

namespace {

GeometryConfig make_config(int dim, int bits) {
  GeometryConfig cfg;
  cfg.dim = dim;
  cfg.resolution_bits = bits;
  return cfg;
}

}  // namespace

TEST_CASE("building the empty set") {
  const auto result = build_quantized(make_config(2, 8), {}, 0);
  CHECK(result.stats.total_work == 0);
  CHECK(result.insertion_order.empty());
  CHECK(canonical_serialize(result.tree) == "0 0 0\n");
}

TEST_CASE("building a single point") {
  const auto cfg = make_config(2, 8);
  auto result = build_quantized(cfg, {QuantizedPoint{{25, 25}, 0}}, 7);
  CHECK(result.stats.total_work == 1);
  REQUIRE(result.stats.iterations.size() == 1);
  CHECK(result.stats.iterations[0].index == 1);
  CHECK(result.stats.iterations[0].conflict_size == 0);
  CHECK(result.stats.iterations[0].nodes_created == 0);
  CHECK(canonical_serialize(result.tree) == "0 0 0 leaf 0 25 25\n");
}

TEST_CASE("two points cost three units of work") {
  // Round one touches the other point once; round two touches nothing.
  const auto cfg = make_config(2, 8);
  const std::vector<QuantizedPoint> pts{QuantizedPoint{{25, 25}, 0},
                                        QuantizedPoint{{30, 30}, 1}};
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto result = build_quantized(cfg, pts, seed);
    CHECK(result.stats.total_work == 3);
    CHECK(result.stats.iterations[0].conflict_size == 1);
    CHECK(result.stats.iterations[1].conflict_size == 0);
  }
}

TEST_CASE("the first round always meets every other point") {
  const auto cfg = make_config(2, 16);
  const auto pts = generate_distinct_quantized(37, cfg, 21);
  const auto result = build_quantized(cfg, pts, 3);
  CHECK(result.stats.iterations.front().conflict_size == 36);
}

TEST_CASE("the insertion order is the seeded shuffle") {
  const auto cfg = make_config(2, 16);
  const auto pts = generate_distinct_quantized(5, cfg, 50);
  const auto result = build_quantized(cfg, pts, 0);
  CHECK(result.insertion_order == std::vector<std::uint32_t>{4, 0, 2, 1, 3});

  std::vector<std::uint32_t> sorted = result.insertion_order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::uint32_t> iota(5);
  std::iota(iota.begin(), iota.end(), 0);
  CHECK(sorted == iota);
}

TEST_CASE("same seed, same everything") {
  const auto cfg = make_config(2, 24);
  const auto pts = generate_distinct_quantized(128, cfg, 8);
  const auto a = build_quantized(cfg, pts, 42);
  const auto b = build_quantized(cfg, pts, 42);
  CHECK(a.insertion_order == b.insertion_order);
  CHECK(a.stats.total_work == b.stats.total_work);
  CHECK(canonical_serialize(a.tree) == canonical_serialize(b.tree));
}

TEST_CASE("different seeds, same tree") {
  const auto cfg = make_config(2, 24);
  const auto pts = generate_distinct_quantized(128, cfg, 8);
  const auto a = build_quantized(cfg, pts, 1);
  const auto b = build_quantized(cfg, pts, 2);
  CHECK(a.insertion_order != b.insertion_order);
  CHECK(canonical_serialize(a.tree) == canonical_serialize(b.tree));
}

TEST_CASE("skipping stats changes nothing else") {
  const auto cfg = make_config(2, 24);
  const auto pts = generate_distinct_quantized(64, cfg, 13);
  const auto with = build_quantized(cfg, pts, 9, /*collect_stats=*/true);
  const auto without = build_quantized(cfg, pts, 9, /*collect_stats=*/false);
  CHECK(without.stats.iterations.empty());
  CHECK(with.stats.iterations.size() == 64);
  CHECK(with.stats.total_work == without.stats.total_work);
  CHECK(canonical_serialize(with.tree) == canonical_serialize(without.tree));
}

TEST_CASE("every prefix of the build matches the reference construction") {
  // The crux of order independence: after each round the tree must equal
  // the one the subdivision construction produces for the same prefix.
  const auto cfg = make_config(2, 16);
  const auto pts = generate_distinct_quantized(48, cfg, 99);
  CompressedQuadtree tree(cfg, pts, ConflictTracking::kTracked);
  const auto order = random_permutation(48, 5);
  std::vector<QuantizedPoint> prefix;
  for (std::uint32_t step = 0; step < 48; ++step) {
    tree.insert(order[step]);
    prefix.push_back(pts[order[step]]);
    const auto reference = build_topdown(cfg, prefix);
    CHECK(canonical_serialize(tree) == canonical_serialize(reference));
  }
}

TEST_CASE("real-valued entry point quantizes and builds") {
  RealPointSet set;
  set.dim = 2;
  set.values = {0.1, 0.1, 0.12, 0.12, 0.9, 0.2};

  BuildConfig config;
  config.geometry = make_config(2, 8);
  config.seed = 4;
  const auto result = build(set, config);
  CHECK(result.tree.inserted_count() == 3);
  CHECK(result.tree.points()[0].coords == std::vector<Coord>{25, 25});

  // Duplicate lattice hits surface the configured policy.
  RealPointSet twice;
  twice.dim = 2;
  twice.values = {0.5, 0.5, 0.5, 0.5};
  CHECK_THROWS_AS(build(twice, config), DomainError);
  config.geometry.duplicates = DuplicatePolicy::kDeduplicate;
  CHECK(build(twice, config).tree.inserted_count() == 1);
}

TEST_CASE("work grows like n log n on uniform points") {
  // Coarse sanity check on the softened bound, far from the constant-level
  // scrutiny of the statistical suites.
  const auto cfg = make_config(2, 31);
  const std::uint32_t n = 4096;
  const auto pts = generate_distinct_quantized(n, cfg, 6);
  const auto result = build_quantized(cfg, pts, 77, /*collect_stats=*/false);
  const double normalized =
      static_cast<double>(result.stats.total_work) /
      (static_cast<double>(n) * std::log(static_cast<double>(n)));
  CHECK(normalized > 0.5);
  CHECK(normalized < 5.0);
}
