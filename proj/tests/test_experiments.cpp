#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cqt/experiments.hpp"
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

TEST_CASE("creation table counters are coherent") {
  const auto cfg = make_config(2, 16);
  const auto pts = generate_distinct_quantized(8, cfg, 140);
  const auto rows = creation_frequency_table(pts, cfg, 200, 77);
  REQUIRE(!rows.empty());

  std::uint32_t last_tile = 0;
  for (const auto& row : rows) {
    CHECK(row.tile_id >= last_tile);
    last_tile = row.tile_id;
    CHECK(row.round >= 1);
    CHECK(row.round <= 8);
    CHECK(row.present >= 1);
    CHECK(row.present <= 200);
    CHECK(row.created <= row.present);
    CHECK(row.freq ==
          static_cast<double>(row.created) / static_cast<double>(row.present));
    CHECK(row.bound == 4.0 / row.round);
    if (row.round == 1) {
      // The first prefix has no predecessor: whatever is present was made.
      CHECK(row.created == row.present);
      CHECK_FALSE(row.flagged);
    }
    if (row.flagged) {
      CHECK(row.present >= 100);
      CHECK(row.bound < 1.0);
    }
  }
}

TEST_CASE("the root square is always present at round one") {
  // A single inserted point keeps the bare root square, so that tile must
  // show `present == trials` at round 1.
  const auto cfg = make_config(2, 16);
  const auto pts = generate_distinct_quantized(6, cfg, 9);
  const std::uint32_t trials = 50;
  const auto rows = creation_frequency_table(pts, cfg, trials, 3);
  const TileKey root_square{CanonicalCell::unit_cube(2), {}};
  bool seen = false;
  for (const auto& row : rows) {
    if (row.tile == root_square && row.round == 1) {
      CHECK(row.present == trials);
      CHECK(row.created == trials);
      seen = true;
    }
  }
  CHECK(seen);
}

TEST_CASE("degenerate work scaling values are exact") {
  const auto cfg = make_config(2, 31);
  const auto rows = work_scaling({1, 2}, 5, 11, cfg);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n == 1);
  CHECK(rows[0].mean_total_work == 1.0);
  CHECK(rows[0].normalized == 1.0);  // the n ln n scale floors at one
  CHECK(rows[1].mean_total_work == 3.0);
  CHECK(rows[1].normalized ==
        3.0 / (2.0 * std::log(2.0)));
}

TEST_CASE("work scaling is deterministic in the seed") {
  const auto cfg = make_config(2, 31);
  const auto a = work_scaling({64}, 3, 5, cfg);
  const auto b = work_scaling({64}, 3, 5, cfg);
  const auto c = work_scaling({64}, 3, 6, cfg);
  CHECK(a[0].mean_total_work == b[0].mean_total_work);
  CHECK(a[0].mean_total_work != c[0].mean_total_work);
}

TEST_CASE("per-round profile pins the first round") {
  const auto cfg = make_config(2, 31);
  const std::uint32_t n = 64;
  const auto profile = per_iteration_profile(n, 4, 21, cfg);
  REQUIRE(profile.size() == n);
  // Round one always sees all remaining points, in every trial.
  CHECK(profile[0].round == 1);
  CHECK(profile[0].mean_k == static_cast<double>(n - 1));
  for (std::uint32_t i = 0; i < n; ++i) {
    CHECK(profile[i].round == i + 1);
    CHECK(profile[i].reference == 4.0 * n / (i + 1));
    CHECK(profile[i].mean_k >= 0.0);
    CHECK(profile[i].mean_k <= static_cast<double>(n - 1));
  }
}

TEST_CASE("deciles average the profile slices") {
  std::vector<ProfileRow> profile;
  for (std::uint32_t i = 1; i <= 20; ++i) {
    ProfileRow row;
    row.round = i;
    row.mean_k = static_cast<double>(i);  // synthetic ramp
    row.reference = 4.0 * 20 / i;
    profile.push_back(row);
  }
  const auto deciles = decile_summary(profile);
  REQUIRE(deciles.size() == 10);
  CHECK(deciles[0].decile == 0);
  CHECK(deciles[0].mean_k == 1.5);  // rounds 1 and 2
  CHECK(deciles[0].mean_bound == 1.0 + 0.5 * (80.0 / 1 + 80.0 / 2));
  CHECK(deciles[9].mean_k == 19.5);
  CHECK(deciles[9].ratio == deciles[9].mean_k / deciles[9].mean_bound);

  CHECK(fit_work_constant(deciles) ==
        std::max_element(deciles.begin(), deciles.end(),
                         [](const DecileRow& a, const DecileRow& b) {
                           return a.ratio < b.ratio;
                         })
            ->ratio);
}

TEST_CASE("deciles need ten rounds") {
  std::vector<ProfileRow> tiny(9);
  CHECK_THROWS_AS(decile_summary(tiny), std::invalid_argument);
}

TEST_CASE("the per-round constant fit transfers to larger sizes") {
  // Fit the constant on one size, then check the next size up stays within
  // slack. This is the cheap in-process version of the statistical gate.
  const auto cfg = make_config(2, 31);
  const auto small = decile_summary(per_iteration_profile(1024, 8, 303, cfg));
  const double c = fit_work_constant(small);
  CHECK(c > 0.0);
  CHECK(c < 4.0);  // the reference curve is not off by an order of magnitude

  const auto large = decile_summary(per_iteration_profile(4096, 4, 303, cfg));
  for (const DecileRow& row : large) {
    CHECK(row.ratio <= 1.5 * c);
  }
}

TEST_CASE("csv renderings are stable") {
  CreationRow creation;
  creation.tile_id = 3;
  creation.round = 2;
  creation.present = 150;
  creation.created = 30;
  creation.freq = 0.2;
  creation.bound = 2.0;
  creation.flagged = false;
  CHECK(creation_csv({creation}) ==
        "tile_id,i,present,created,freq,bound,flagged\n"
        "3,2,150,30,0.2,2,0\n");

  ScalingRow scaling;
  scaling.n = 2;
  scaling.trials = 5;
  scaling.mean_total_work = 3.0;
  scaling.normalized = 1.5;
  CHECK(scaling_csv({scaling}) ==
        "n,trials,mean_total_work,normalized\n"
        "2,5,3,1.5\n");

  ProfileRow profile;
  profile.round = 1;
  profile.mean_k = 63.0;
  profile.reference = 256.0;
  CHECK(profile_csv({profile}) ==
        "i,mean_k,reference_4n_over_i\n"
        "1,63,256\n");

  CHECK(creation_csv({}) == "tile_id,i,present,created,freq,bound,flagged\n");
}

TEST_CASE("csv doubles use nine significant digits") {
  ScalingRow row;
  row.n = 256;
  row.trials = 3;
  row.mean_total_work = 2064.0 + 1.0 / 3.0;
  row.normalized = 1.454200907;
  CHECK(scaling_csv({row}) ==
        "n,trials,mean_total_work,normalized\n"
        "256,3,2064.33333,1.45420091\n");
}
