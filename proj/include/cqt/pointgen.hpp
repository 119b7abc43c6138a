#pragma once

#include <cstdint>
#include <vector>

#include "cqt/geometry.hpp"

namespace cqt {

// n points drawn i.i.d. uniform per coordinate in [0,1).
RealPointSet generate_uniform(std::size_t n, int dim, std::uint64_t seed);

// n points scattered around `clusters` uniform centers with the given
// maximum offset per coordinate, clamped into [0,1). Small radii pack points
// tightly and force deep compressed edges.
RealPointSet generate_clustered(std::size_t n, int dim, std::uint32_t clusters,
                                double radius, std::uint64_t seed);

// n distinct lattice points drawn uniformly, resampling collisions. Ids are
// assigned in draw order.
std::vector<QuantizedPoint> generate_distinct_quantized(
    std::size_t n, const GeometryConfig& cfg, std::uint64_t seed);

}  // namespace cqt
