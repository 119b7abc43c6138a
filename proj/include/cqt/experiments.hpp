#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cqt/geometry.hpp"
#include "cqt/oracle.hpp"

namespace cqt {

// Aggregated creation statistics of one decomposition tile at one round
// index, over many random insertion orders of one fixed point set. A tile is
// "present" at round i when it belongs to the decomposition of the first i
// points, and "created" when additionally the first i-1 points' decomposition
// lacked it.
struct CreationRow {
  std::uint32_t tile_id = 0;
  std::uint32_t round = 0;
  std::uint64_t present = 0;
  std::uint64_t created = 0;
  double freq = 0.0;   // created / present
  double bound = 0.0;  // 4 / round
  bool flagged = false;
  TileKey tile;
};

// Runs `trials` random orders of the fixed set. After round 1 every present
// tile counts as created (there was no earlier prefix). A row is flagged
// when present >= 100, 4/i < 1, and the observed frequency exceeds 4/i by
// more than three binomial standard deviations — outside what the expected
// creation probability allows even with sampling noise.
std::vector<CreationRow> creation_frequency_table(
    const std::vector<QuantizedPoint>& points, const GeometryConfig& cfg,
    std::uint32_t trials, std::uint64_t seed);

struct ScalingRow {
  std::uint32_t n = 0;
  std::uint32_t trials = 0;
  double mean_total_work = 0.0;
  double normalized = 0.0;  // mean_total_work / (n ln n); n ln n floored at 1
};

// Mean construction work over fresh uniform sets of each size.
std::vector<ScalingRow> work_scaling(const std::vector<std::uint32_t>& sizes,
                                     std::uint32_t trials, std::uint64_t seed,
                                     const GeometryConfig& cfg);

struct ProfileRow {
  std::uint32_t round = 0;
  double mean_k = 0.0;      // mean conflict-list size met at this round
  double reference = 0.0;   // 4 n / round
};

// Per-round mean of the conflict-list size over repeated uniform builds.
std::vector<ProfileRow> per_iteration_profile(std::uint32_t n,
                                              std::uint32_t trials,
                                              std::uint64_t seed,
                                              const GeometryConfig& cfg);

struct DecileRow {
  int decile = 0;           // 0..9, equal slices of the round range
  double mean_k = 0.0;      // average of mean_k over the slice
  double mean_bound = 0.0;  // average of 1 + 4n/i over the slice
  double ratio = 0.0;       // mean_k / mean_bound
};

std::vector<DecileRow> decile_summary(const std::vector<ProfileRow>& profile);

// Largest per-decile ratio: the scale constant fit on one size and checked
// against larger ones.
double fit_work_constant(const std::vector<DecileRow>& deciles);

// CSV renderings, header line included, one row per record.
std::string creation_csv(const std::vector<CreationRow>& rows);
std::string scaling_csv(const std::vector<ScalingRow>& rows);
std::string profile_csv(const std::vector<ProfileRow>& rows);

}  // namespace cqt
