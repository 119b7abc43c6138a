#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cqt/builder.hpp"
#include "cqt/experiments.hpp"
#include "cqt/geometry.hpp"
#include "cqt/oracle.hpp"
#include "cqt/pointfile.hpp"
#include "cqt/pointgen.hpp"
#include "cqt/quadtree.hpp"
#include "cqt/rng.hpp"
#include "cqt/svg.hpp"

namespace {

struct GenArgs {
  std::uint64_t n = 16;
  int dim = 2;
  std::string dist = "uniform";
  std::uint64_t seed = 0;
  std::uint32_t clusters = 3;
  double radius = 0.01;
  std::string out;
};

struct BuildArgs {
  std::string input;
  std::uint64_t seed = 0;
  int resolution = 31;
  std::string out;
};

struct CheckArgs {
  std::string input;
  std::uint64_t seed = 0;
  int resolution = 31;
  int trials = 1000;
};

struct BenchArgs {
  std::vector<std::uint32_t> sizes{1024, 4096, 16384, 65536};
  std::uint32_t trials = 10;
  std::uint32_t profile_n = 4096;
  std::uint32_t profile_trials = 50;
  std::uint32_t mc_points = 16;
  std::uint32_t mc_trials = 5000;
  std::uint64_t seed = 0;
  int resolution = 31;
  int dim = 2;
  std::string out;
};

struct RenderArgs {
  std::string input;
  bool tree_input = false;
  std::uint64_t seed = 0;
  int resolution = 31;
  std::string out;
};

int run_gen(const GenArgs& a) {
  const cqt::RealPointSet pts =
      a.dist == "uniform"
          ? cqt::generate_uniform(a.n, a.dim, a.seed)
          : cqt::generate_clustered(a.n, a.dim, a.clusters, a.radius, a.seed);
  std::string header = "points=" + std::to_string(a.n) +
                       " dim=" + std::to_string(a.dim) + " dist=" + a.dist +
                       " seed=" + std::to_string(a.seed);
  if (a.dist == "clustered") {
    header += " clusters=" + std::to_string(a.clusters);
  }
  cqt::write_point_file(a.out, pts, header);
  std::cout << "wrote " << a.out << " (" << a.n << " points)\n";
  return 0;
}

int run_build(const BuildArgs& a) {
  const cqt::RealPointSet raw = cqt::read_point_file(a.input);
  cqt::BuildConfig cfg;
  cfg.geometry.dim = raw.dim;
  cfg.geometry.resolution_bits = a.resolution;
  cfg.seed = a.seed;
  const cqt::BuildResult result = cqt::build(raw, cfg);
  if (!a.out.empty()) {
    cqt::write_text_file(a.out, cqt::canonical_serialize(result.tree));
  }
  std::cout << "points: " << result.tree.points().size() << '\n'
            << "nodes: " << result.tree.node_count() << '\n'
            << "max_level: " << result.tree.max_level() << '\n'
            << "compressed_edges: " << result.tree.compressed_edge_count()
            << '\n'
            << "total_work: " << result.stats.total_work << '\n';
  return 0;
}

int run_check(const CheckArgs& a) {
  const cqt::RealPointSet raw = cqt::read_point_file(a.input);
  cqt::GeometryConfig geo;
  geo.dim = raw.dim;
  geo.resolution_bits = a.resolution;
  const auto pts = cqt::quantize_points(raw, geo);

  bool ok = true;
  const auto result = cqt::build_quantized(geo, pts, a.seed, true);

  const auto violations =
      cqt::validate(result.tree, a.trials, cqt::mix_seed(a.seed, 17));
  if (violations.empty()) {
    std::cout << "structure: ok\n";
  } else {
    ok = false;
    std::cout << "structure: FAIL (" << violations.size() << " violations)\n";
    for (std::size_t i = 0; i < violations.size() && i < 5; ++i) {
      std::cout << "  - " << violations[i] << '\n';
    }
  }

  const std::string text = cqt::canonical_serialize(result.tree);
  const auto reference = cqt::build_topdown(geo, pts);
  if (text == cqt::canonical_serialize(reference)) {
    std::cout << "construction_agreement: ok\n";
  } else {
    ok = false;
    std::cout << "construction_agreement: FAIL (incremental and subdivision "
                 "trees differ)\n";
  }

  bool orders_match = true;
  for (std::uint64_t alt = 1; alt <= 2; ++alt) {
    const auto other =
        cqt::build_quantized(geo, pts, cqt::mix_seed(a.seed, alt), false);
    orders_match =
        orders_match && cqt::canonical_serialize(other.tree) == text;
  }
  if (orders_match) {
    std::cout << "order_independence: ok\n";
  } else {
    ok = false;
    std::cout << "order_independence: FAIL (serialization depends on the "
                 "insertion order)\n";
  }

  std::uint32_t max_created = 0;
  for (const cqt::IterationRecord& rec : result.stats.iterations) {
    max_created = std::max(max_created, rec.nodes_created);
  }
  if (max_created <= 3) {
    std::cout << "node_budget: ok (max " << max_created << " per insertion)\n";
  } else {
    ok = false;
    std::cout << "node_budget: FAIL (saw " << max_created
              << " nodes from one insertion)\n";
  }

  if (pts.size() <= 12) {
    const auto survey = cqt::survey_defining_sets(pts, geo);
    std::uint32_t max_size = 0;
    std::uint32_t max_intersection = 0;
    for (const auto& row : survey) {
      max_size = std::max(max_size, row.min_size);
      max_intersection = std::max(max_intersection, row.intersection_size);
    }
    if (max_size <= 4 && max_intersection <= 4) {
      std::cout << "defining_sets: ok (max size " << max_size
                << ", max intersection " << max_intersection << ", limit 4)\n";
    } else {
      ok = false;
      std::cout << "defining_sets: FAIL (max size " << max_size
                << ", max intersection " << max_intersection
                << ", limit 4)\n";
    }
  }

  std::cout << (ok ? "result: pass\n" : "result: fail\n");
  return ok ? 0 : 1;
}

int run_bench(const BenchArgs& a) {
  cqt::GeometryConfig geo;
  geo.dim = a.dim;
  geo.resolution_bits = a.resolution;
  geo.check();
  std::filesystem::create_directories(a.out);
  const std::filesystem::path dir(a.out);

  const auto scaling =
      cqt::work_scaling(a.sizes, a.trials, cqt::mix_seed(a.seed, 101), geo);
  const auto scaling_path = (dir / "scaling.csv").string();
  cqt::write_text_file(scaling_path, cqt::scaling_csv(scaling));
  std::cout << "wrote " << scaling_path << " (" << scaling.size()
            << " rows)\n";

  const auto profile = cqt::per_iteration_profile(
      a.profile_n, a.profile_trials, cqt::mix_seed(a.seed, 202), geo);
  const auto profile_path = (dir / "profile.csv").string();
  cqt::write_text_file(profile_path, cqt::profile_csv(profile));
  std::cout << "wrote " << profile_path << " (" << profile.size()
            << " rows)\n";

  const auto mc_points =
      cqt::generate_distinct_quantized(a.mc_points, geo, cqt::mix_seed(a.seed, 303));
  const auto creation = cqt::creation_frequency_table(
      mc_points, geo, a.mc_trials, cqt::mix_seed(a.seed, 404));
  const auto creation_path = (dir / "lemma2.csv").string();
  cqt::write_text_file(creation_path, cqt::creation_csv(creation));
  std::cout << "wrote " << creation_path << " (" << creation.size()
            << " rows)\n";

  if (!scaling.empty()) {
    double lo = scaling.front().normalized;
    double hi = lo;
    for (const auto& row : scaling) {
      lo = std::min(lo, row.normalized);
      hi = std::max(hi, row.normalized);
    }
    std::cout << "normalized_work_spread: " << (lo > 0 ? hi / lo : 0) << '\n';
  }
  std::uint64_t flagged = 0;
  std::uint64_t high_presence = 0;
  for (const auto& row : creation) {
    if (row.present >= 100) {
      ++high_presence;
      if (row.flagged) ++flagged;
    }
  }
  std::cout << "creation_rows_flagged: " << flagged << "/" << high_presence
            << '\n';
  return 0;
}

int run_render(const RenderArgs& a) {
  cqt::GeometryConfig geo;
  geo.dim = 2;
  geo.resolution_bits = a.resolution;
  std::string svg;
  if (a.tree_input) {
    const auto tree = cqt::deserialize_tree(cqt::read_text_file(a.input), geo);
    svg = cqt::render_svg(tree);
  } else {
    const cqt::RealPointSet raw = cqt::read_point_file(a.input);
    if (raw.dim != 2) {
      throw cqt::DomainError("rendering supports dimension 2 only");
    }
    cqt::BuildConfig cfg;
    cfg.geometry = geo;
    cfg.seed = a.seed;
    cfg.collect_stats = false;
    svg = cqt::render_svg(cqt::build(raw, cfg).tree);
  }
  cqt::write_text_file(a.out, svg);
  std::cout << "wrote " << a.out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compressed quadtree toolkit"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "write a random point file");
  gen->add_option("--n", gen_args.n, "number of points");
  gen->add_option("--dim", gen_args.dim, "coordinates per point")
      ->check(CLI::Range(1, 24));
  gen->add_option("--dist", gen_args.dist, "uniform or clustered")
      ->check(CLI::IsMember({"uniform", "clustered"}));
  gen->add_option("--seed", gen_args.seed, "generator seed");
  gen->add_option("--clusters", gen_args.clusters, "centers for clustered")
      ->check(CLI::Range(1u, 1u << 20));
  gen->add_option("--radius", gen_args.radius, "cluster radius");
  gen->add_option("--out", gen_args.out, "output point file")->required();

  BuildArgs build_args;
  CLI::App* build = app.add_subcommand(
      "build", "build the tree of a point file and print a summary");
  build->add_option("input", build_args.input, "point file")->required();
  build->add_option("--seed", build_args.seed, "insertion-order seed");
  build->add_option("--resolution", build_args.resolution,
                    "lattice bits per axis")
      ->check(CLI::Range(1, 62));
  build->add_option("--out", build_args.out, "write the serialized tree here");

  CheckArgs check_args;
  CLI::App* check = app.add_subcommand(
      "check", "audit structure, order independence, and defining sets");
  check->add_option("input", check_args.input, "point file")->required();
  check->add_option("--seed", check_args.seed, "insertion-order seed");
  check->add_option("--resolution", check_args.resolution,
                    "lattice bits per axis")
      ->check(CLI::Range(1, 62));
  check->add_option("--trials", check_args.trials,
                    "random lattice points for the partition audit")
      ->check(CLI::Range(0, 1000000));

  BenchArgs bench_args;
  CLI::App* bench =
      app.add_subcommand("bench", "run the statistical suites, write CSVs");
  bench->add_option("--n", bench_args.sizes, "sizes for the scaling suite")
      ->delimiter(',');
  bench->add_option("--trials", bench_args.trials, "builds per size");
  bench->add_option("--profile-n", bench_args.profile_n,
                    "size for the per-round profile");
  bench->add_option("--profile-trials", bench_args.profile_trials,
                    "builds for the per-round profile");
  bench->add_option("--mc-points", bench_args.mc_points,
                    "fixed-set size for the creation-frequency suite");
  bench->add_option("--mc-trials", bench_args.mc_trials,
                    "random orders for the creation-frequency suite");
  bench->add_option("--seed", bench_args.seed, "base seed");
  bench->add_option("--resolution", bench_args.resolution,
                    "lattice bits per axis")
      ->check(CLI::Range(1, 62));
  bench->add_option("--dim", bench_args.dim, "coordinates per point")
      ->check(CLI::Range(1, 24));
  bench->add_option("--out", bench_args.out, "output directory")->required();

  RenderArgs render_args;
  CLI::App* render =
      app.add_subcommand("render", "draw a planar tree as SVG");
  render->add_option("input", render_args.input,
                     "point file, or serialized tree with --tree")
      ->required();
  render->add_flag("--tree", render_args.tree_input,
                   "input is a serialized tree");
  render->add_option("--seed", render_args.seed, "insertion-order seed");
  render->add_option("--resolution", render_args.resolution,
                     "lattice bits per axis")
      ->check(CLI::Range(1, 62));
  render->add_option("--out", render_args.out, "output SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (build->parsed()) return run_build(build_args);
    if (check->parsed()) return run_check(check_args);
    if (bench->parsed()) return run_bench(bench_args);
    if (render->parsed()) return run_render(render_args);
  } catch (const cqt::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const cqt::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
