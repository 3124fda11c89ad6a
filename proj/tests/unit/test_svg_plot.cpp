#include <doctest.h>

#include <numbers>
#include <string>

#include "csf/errors.hpp"
#include "csf/svg_plot.hpp"
#include "csf/world.hpp"

using namespace csf;

namespace {

constexpr double pi = std::numbers::pi;

int count_of(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (std::size_t at = hay.find(needle); at != std::string::npos;
       at = hay.find(needle, at + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("square map renders one glyph set per feature") {
  WorldModel w = load_world(std::string(CSF_WORLDS_DIR) + "/square.txt");
  // Noise well under the tracking threshold keeps each wall one segment.
  PolarScan s = cast_scan(w, {0, 0, pi / 4}, 360, {0.003, 0.0005}, 5);
  FeatureMap map = extract_feature_map(s, Method::wclm);
  REQUIRE(map.lines.size() == 4);
  REQUIRE(map.corners.size() == 4);

  std::string svg = render_map_svg(s, map);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(count_of(svg, "class=\"pt\"") == 360);
  CHECK(count_of(svg, "class=\"wall\"") == 4);
  CHECK(count_of(svg, "class=\"corner\"") == 4);
  CHECK(count_of(svg, "class=\"cov\"") == 4);
  CHECK(count_of(svg, "class=\"origin\"") == 1);
  CHECK(svg.find("legend") != std::string::npos);
}

TEST_CASE("an empty feature map still renders points and origin") {
  WorldModel w;
  w.segments = {{2, -2, 2, 2}};
  PolarScan s = cast_scan(w, {0, 0, 0}, 90, {0.0, 0.0}, 1);
  FeatureMap empty;
  empty.method = Method::arras;
  empty.n_scan_points = s.size();
  empty.noise = s.noise;
  std::string svg = render_map_svg(s, empty);
  CHECK(count_of(svg, "class=\"pt\"") == static_cast<int>(s.size()));
  CHECK(count_of(svg, "class=\"wall\"") == 0);
  CHECK(count_of(svg, "class=\"corner\"") == 0);
  CHECK(count_of(svg, "class=\"origin\"") == 1);
}

TEST_CASE("rendering is byte-deterministic") {
  WorldModel w = load_world(std::string(CSF_WORLDS_DIR) + "/env_b_like.txt");
  PolarScan s = cast_scan(w, {2.5, 1.5, pi / 4}, 450, {0.05, 0.0034121}, 1);
  RunConfig cfg;
  cfg.seg.threshold_m = 0.15;
  FeatureMap map = extract_feature_map(s, Method::siadat, cfg);
  CHECK(render_map_svg(s, map) == render_map_svg(s, map));
}

TEST_CASE("a map from a different scan is rejected") {
  WorldModel w = load_world(std::string(CSF_WORLDS_DIR) + "/square.txt");
  PolarScan s = cast_scan(w, {0, 0, pi / 4}, 360, {0.01, 0.001}, 5);
  FeatureMap map = extract_feature_map(s, Method::wclm);

  PolarScan other = cast_scan(w, {0, 0, pi / 4}, 180, {0.01, 0.001}, 5);
  CHECK_THROWS_AS(render_map_svg(other, map), validation_error);

  // Same point count, spans out of range.
  FeatureMap doctored = map;
  doctored.n_scan_points = 9999;
  CHECK_THROWS_AS(render_map_svg(s, doctored), validation_error);
}
