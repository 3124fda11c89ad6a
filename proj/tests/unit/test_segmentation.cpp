#include <doctest.h>

#include <cmath>
#include <numbers>

#include "csf/segmentation.hpp"
#include "csf/world.hpp"

using namespace csf;

namespace {

constexpr double pi = std::numbers::pi;

PolarScan square_scan(double heading, int rays) {
  WorldModel w = load_world(std::string(CSF_WORLDS_DIR) + "/square.txt");
  return cast_scan(w, {0, 0, heading}, rays, {0.0, 0.0}, 1);
}

}  // namespace

TEST_CASE("square scan with the sweep cut on a corner gives exactly 4 segments") {
  PolarScan s = square_scan(pi / 4, 360);
  auto spans = segment_scan(s, 0.02, 5);
  REQUIRE(spans.size() == 4);
  int covered = 0;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    CHECK(spans[i].start <= spans[i].end);
    if (i) CHECK(spans[i].start > spans[i - 1].end);
    covered += spans[i].count();
  }
  // Every wall subtends 90 deg = 90 rays; corner rays belong to one wall each.
  CHECK(covered == 360);
}

TEST_CASE("square scan with the cut mid-wall splits that wall: 5 segments") {
  PolarScan s = square_scan(0.0, 360);
  auto spans = segment_scan(s, 0.02, 5);
  CHECK(spans.size() == 5);  // the wall crossing the -pi boundary appears twice
}

TEST_CASE("a single straight wall is one segment covering every point") {
  WorldModel w;
  w.segments = {{2, -2, 2, 2}};
  PolarScan s = cast_scan(w, {0, 0, 0}, 360, {0.0, 0.0}, 1);
  auto spans = segment_scan(s, 0.02, 5);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].start == 0);
  CHECK(spans[0].end == static_cast<int>(s.size()) - 1);
}

TEST_CASE("octagon room splits into 8 segments") {
  WorldModel w = load_world(std::string(CSF_WORLDS_DIR) + "/env_b_like.txt");
  PolarScan s = cast_scan(w, {2.5, 1.5, pi / 4}, 450, {0.0, 0.0}, 1);
  auto spans = segment_scan(s, 0.02, 5);
  CHECK(spans.size() == 8);
}

TEST_CASE("min_points discards short runs") {
  // 4 collinear points then a far jump then 6 collinear points: with
  // min_points 5 only the second run survives.
  PolarScan s;
  s.noise = {0.01, 0.001};
  for (int k = 0; k < 4; ++k) s.points.push_back({1.0, -0.4 + 0.01 * k});
  for (int k = 0; k < 6; ++k) {
    double theta = 0.3 + 0.01 * k;
    s.points.push_back({3.0 / std::cos(theta - 0.3), theta});
  }
  auto spans = segment_scan(s, 0.02, 5);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].start == 4);
  CHECK(spans[0].end == 9);

  auto both = segment_scan(s, 0.02, 3);
  CHECK(both.size() == 2);
}

TEST_CASE("an out-of-range point breaks the run") {
  // 12 points on rho = 2 (constant-range arc is not a line, so keep the arc
  // small) with one 50 m outlier in the middle.
  PolarScan s;
  s.noise = {0.01, 0.001};
  for (int k = 0; k < 12; ++k) {
    double theta = -0.05 + 0.01 * k;
    double rho = k == 6 ? 50.0 : 2.0 / std::cos(theta);
    s.points.push_back({rho, theta});
  }
  auto spans = segment_scan(s, 0.02, 5, 40.0);
  // The break leaves a 6-point head and a 5-point tail, outlier in neither.
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].start == 0);
  CHECK(spans[0].end == 5);
  CHECK(spans[1].start == 7);
  CHECK(spans[1].end == 11);

  // With the ceiling above the outlier, the 50 m point instead becomes a
  // reseed partner and eats index 7 too: only the head survives min_points.
  auto spans_hi = segment_scan(s, 0.02, 5, 100.0);
  REQUIRE(spans_hi.size() == 1);
  CHECK(spans_hi[0].end == 5);
}

TEST_CASE("every point of every span sits within the threshold of its span's line") {
  WorldModel w = load_world(std::string(CSF_WORLDS_DIR) + "/env_b_like.txt");
  PolarScan s = cast_scan(w, {2.5, 1.5, pi / 4}, 450, {0.05, 0.0034121}, 3);
  const double threshold = 0.15;
  auto spans = segment_scan(s, threshold, 5);
  REQUIRE(!spans.empty());
  for (const auto& sp : spans) {
    CHECK(sp.count() >= 5);
    // Refit the final unweighted orthogonal line and check residuals; the
    // tracking rule admits each point against the running fit, so the final
    // distances can exceed the gate only by a small factor.
    double sx = 0, sy = 0;
    int n = sp.count();
    std::vector<std::pair<double, double>> xy;
    for (int i = sp.start; i <= sp.end; ++i) {
      auto [x, y] = polar_to_cartesian(s.points[i]);
      xy.emplace_back(x, y);
      sx += x;
      sy += y;
    }
    sx /= n;
    sy /= n;
    double suu = 0, svv = 0, suv = 0;
    for (auto& [x, y] : xy) {
      suu += (x - sx) * (x - sx);
      svv += (y - sy) * (y - sy);
      suv += (x - sx) * (y - sy);
    }
    double alpha = 0.5 * std::atan2(-2 * suv, svv - suu);
    double r = sx * std::cos(alpha) + sy * std::sin(alpha);
    for (auto& [x, y] : xy)
      CHECK(std::fabs(x * std::cos(alpha) + y * std::sin(alpha) - r) <= 2 * threshold);
  }
}
