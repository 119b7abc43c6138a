#include "cqt/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "cqt/builder.hpp"
#include "cqt/pointgen.hpp"
#include "cqt/rng.hpp"

namespace cqt {

std::vector<CreationRow> creation_frequency_table(
    const std::vector<QuantizedPoint>& points, const GeometryConfig& cfg,
    std::uint32_t trials, std::uint64_t seed) {
  const std::size_t n = points.size();
  // Per tile, per round: {present, created} counters. std::map keeps the
  // output in key order, independent of discovery order.
  std::map<TileKey, std::vector<std::array<std::uint64_t, 2>>> stats;

  std::vector<QuantizedPoint> prefix;
  prefix.reserve(n);
  for (std::uint32_t trial = 0; trial < trials; ++trial) {
    const auto perm = random_permutation(n, mix_seed(seed, trial));
    prefix.clear();
    std::vector<TileKey> prev;
    for (std::size_t i = 1; i <= n; ++i) {
      prefix.push_back(points[perm[i - 1]]);
      std::vector<TileKey> cur = tiles_of(prefix, cfg);
      for (const TileKey& key : cur) {
        auto& rows = stats.try_emplace(key, n).first->second;
        ++rows[i - 1][0];
        if (i == 1 || !std::binary_search(prev.begin(), prev.end(), key)) {
          ++rows[i - 1][1];
        }
      }
      prev = std::move(cur);
    }
  }

  std::vector<CreationRow> out;
  std::uint32_t id = 0;
  for (const auto& [key, rows] : stats) {
    for (std::size_t i = 1; i <= n; ++i) {
      const std::uint64_t present = rows[i - 1][0];
      if (present == 0) continue;
      CreationRow row;
      row.tile_id = id;
      row.round = static_cast<std::uint32_t>(i);
      row.present = present;
      row.created = rows[i - 1][1];
      row.freq = static_cast<double>(row.created) / static_cast<double>(present);
      row.bound = 4.0 / static_cast<double>(i);
      row.flagged =
          present >= 100 && row.bound < 1.0 &&
          row.freq > row.bound + 3.0 * std::sqrt(row.bound * (1.0 - row.bound) /
                                                 static_cast<double>(present));
      row.tile = key;
      out.push_back(std::move(row));
    }
    ++id;
  }
  return out;
}

namespace {

std::uint64_t size_stream(std::uint64_t seed, std::uint64_t n, bool profile) {
  return mix_seed(seed, 2 * n + (profile ? 1 : 0));
}

}  // namespace

std::vector<ScalingRow> work_scaling(const std::vector<std::uint32_t>& sizes,
                                     std::uint32_t trials, std::uint64_t seed,
                                     const GeometryConfig& cfg) {
  std::vector<ScalingRow> out;
  out.reserve(sizes.size());
  for (std::uint32_t n : sizes) {
    const std::uint64_t base = size_stream(seed, n, false);
    long double sum = 0;
    for (std::uint32_t t = 0; t < trials; ++t) {
      auto pts = generate_distinct_quantized(n, cfg, mix_seed(base, 2 * t));
      const auto result =
          build_quantized(cfg, std::move(pts), mix_seed(base, 2 * t + 1),
                          /*collect_stats=*/false);
      sum += static_cast<long double>(result.stats.total_work);
    }
    ScalingRow row;
    row.n = n;
    row.trials = trials;
    row.mean_total_work =
        trials == 0 ? 0.0 : static_cast<double>(sum / trials);
    const double scale =
        std::max(1.0, static_cast<double>(n) * std::log(static_cast<double>(n)));
    row.normalized = row.mean_total_work / scale;
    out.push_back(row);
  }
  return out;
}

std::vector<ProfileRow> per_iteration_profile(std::uint32_t n,
                                              std::uint32_t trials,
                                              std::uint64_t seed,
                                              const GeometryConfig& cfg) {
  std::vector<long double> sums(n, 0);
  const std::uint64_t base = size_stream(seed, n, true);
  for (std::uint32_t t = 0; t < trials; ++t) {
    auto pts = generate_distinct_quantized(n, cfg, mix_seed(base, 2 * t));
    const auto result = build_quantized(cfg, std::move(pts),
                                        mix_seed(base, 2 * t + 1),
                                        /*collect_stats=*/true);
    for (const IterationRecord& rec : result.stats.iterations) {
      sums[rec.index - 1] += rec.conflict_size;
    }
  }
  std::vector<ProfileRow> out;
  out.reserve(n);
  for (std::uint32_t i = 1; i <= n; ++i) {
    ProfileRow row;
    row.round = i;
    row.mean_k =
        trials == 0 ? 0.0 : static_cast<double>(sums[i - 1] / trials);
    row.reference = 4.0 * static_cast<double>(n) / static_cast<double>(i);
    out.push_back(row);
  }
  return out;
}

std::vector<DecileRow> decile_summary(const std::vector<ProfileRow>& profile) {
  const std::size_t n = profile.size();
  if (n < 10) {
    throw std::invalid_argument("decile summary needs at least 10 rounds");
  }
  std::vector<DecileRow> out;
  out.reserve(10);
  for (int d = 0; d < 10; ++d) {
    const std::size_t lo = n * static_cast<std::size_t>(d) / 10;
    const std::size_t hi = n * static_cast<std::size_t>(d + 1) / 10;
    double k_sum = 0;
    double bound_sum = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      k_sum += profile[i].mean_k;
      bound_sum += 1.0 + profile[i].reference;
    }
    DecileRow row;
    row.decile = d;
    row.mean_k = k_sum / static_cast<double>(hi - lo);
    row.mean_bound = bound_sum / static_cast<double>(hi - lo);
    row.ratio = row.mean_k / row.mean_bound;
    out.push_back(row);
  }
  return out;
}

double fit_work_constant(const std::vector<DecileRow>& deciles) {
  double c = 0;
  for (const DecileRow& row : deciles) c = std::max(c, row.ratio);
  return c;
}

namespace {

void append_double(std::string& out, double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  out += buffer;
}

}  // namespace

std::string creation_csv(const std::vector<CreationRow>& rows) {
  std::string out = "tile_id,i,present,created,freq,bound,flagged\n";
  for (const CreationRow& row : rows) {
    out += std::to_string(row.tile_id);
    out += ',';
    out += std::to_string(row.round);
    out += ',';
    out += std::to_string(row.present);
    out += ',';
    out += std::to_string(row.created);
    out += ',';
    append_double(out, row.freq);
    out += ',';
    append_double(out, row.bound);
    out += ',';
    out += row.flagged ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string scaling_csv(const std::vector<ScalingRow>& rows) {
  std::string out = "n,trials,mean_total_work,normalized\n";
  for (const ScalingRow& row : rows) {
    out += std::to_string(row.n);
    out += ',';
    out += std::to_string(row.trials);
    out += ',';
    append_double(out, row.mean_total_work);
    out += ',';
    append_double(out, row.normalized);
    out += '\n';
  }
  return out;
}

std::string profile_csv(const std::vector<ProfileRow>& rows) {
  std::string out = "i,mean_k,reference_4n_over_i\n";
  for (const ProfileRow& row : rows) {
    out += std::to_string(row.round);
    out += ',';
    append_double(out, row.mean_k);
    out += ',';
    append_double(out, row.reference);
    out += '\n';
  }
  return out;
}

}  // namespace cqt
