#include "cqt/builder.hpp"

#include <utility>

#include "cqt/rng.hpp"

namespace cqt {

BuildResult build_quantized(GeometryConfig geometry,
                            std::vector<QuantizedPoint> points,
                            std::uint64_t seed, bool collect_stats) {
  const std::size_t n = points.size();
  BuildResult result{
      CompressedQuadtree(geometry, std::move(points),
                         ConflictTracking::kTracked),
      random_permutation(n, seed),
      BuildStats{}};

  if (collect_stats) result.stats.iterations.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    const RestructureReport report =
        result.tree.insert(result.insertion_order[step]);
    result.stats.total_work += 1 + report.conflict_count;
    if (collect_stats) {
      result.stats.iterations.push_back(
          IterationRecord{static_cast<std::uint32_t>(step + 1),
                          report.conflict_count, report.new_count});
    }
  }
  return result;
}

BuildResult build(const RealPointSet& points, const BuildConfig& config) {
  return build_quantized(config.geometry,
                         quantize_points(points, config.geometry), config.seed,
                         config.collect_stats);
}

}  // namespace cqt
