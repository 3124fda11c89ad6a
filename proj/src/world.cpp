#include "csf/world.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "csf/errors.hpp"
#include "csf/format.hpp"
#include "csf/rng.hpp"

namespace csf {

namespace {

double segment_length(const WallSegment& s) { return std::hypot(s.x2 - s.x1, s.y2 - s.y1); }

// Distance from point to a segment (for the pose-on-wall guard).
double point_segment_distance(double px, double py, const WallSegment& s) {
  double dx = s.x2 - s.x1, dy = s.y2 - s.y1;
  double t = ((px - s.x1) * dx + (py - s.y1) * dy) / (dx * dx + dy * dy);
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(px - (s.x1 + t * dx), py - (s.y1 + t * dy));
}

// Nearest forward intersection of the ray origin + t*(cos a, sin a), t > 0,
// with a wall. Parametric solve with a small denominator guard; grazing hits
// at segment endpoints count.
bool ray_hit(double ox, double oy, double dirx, double diry, const WallSegment& s, double& t_out) {
  double ex = s.x2 - s.x1, ey = s.y2 - s.y1;
  double den = dirx * ey - diry * ex;
  if (std::fabs(den) < 1e-12) return false;  // ray parallel to the wall
  double rx = s.x1 - ox, ry = s.y1 - oy;
  double t = (rx * ey - ry * ex) / den;   // along the ray
  double u = (rx * diry - ry * dirx) / den;  // along the wall, 0..1
  if (t <= 1e-12 || u < -1e-12 || u > 1.0 + 1e-12) return false;
  t_out = t;
  return true;
}

}  // namespace

void validate(const WorldModel& w) {
  if (w.segments.empty()) throw validation_error("world has no wall segments");
  for (std::size_t i = 0; i < w.segments.size(); ++i)
    if (!(segment_length(w.segments[i]) > 1e-9))
      throw validation_error("wall segment " + std::to_string(i) + " has (near-)zero length");
}

WorldModel load_world(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw io_error("cannot open world file: " + path);
  WorldModel w;
  w.name = path;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first) || first[0] == '#') continue;
    WallSegment s;
    std::istringstream vals(line);
    std::string extra;
    if (!(vals >> s.x1 >> s.y1 >> s.x2 >> s.y2) || (vals >> extra))
      throw validation_error(path + ":" + std::to_string(lineno) +
                             ": expected `x1 y1 x2 y2`, got: " + line);
    w.segments.push_back(s);
  }
  validate(w);
  return w;
}

void save_world(const WorldModel& world, const std::string& path) {
  validate(world);
  std::ofstream f(path);
  if (!f) throw io_error("cannot write world file: " + path);
  if (!world.name.empty()) f << "# " << world.name << "\n";
  for (const auto& s : world.segments)
    f << g17(s.x1) << ' ' << g17(s.y1) << ' ' << g17(s.x2) << ' ' << g17(s.y2) << "\n";
  if (!f) throw io_error("write failed: " + path);
}

PolarScan cast_scan(const WorldModel& world, const Pose& pose, int n_rays, const NoiseModel& noise,
                    std::uint64_t seed) {
  validate(world);
  if (n_rays < 1) throw validation_error("n_rays must be >= 1");
  if (noise.sigma_rho < 0.0 || noise.sigma_theta < 0.0)
    throw validation_error("noise sigmas must be >= 0");
  for (std::size_t i = 0; i < world.segments.size(); ++i)
    if (point_segment_distance(pose.x, pose.y, world.segments[i]) < 1e-9)
      throw geometry_error("sensor pose lies on wall segment " + std::to_string(i));

  PolarScan scan;
  // The attached model describes the assumed sensor and must stay strictly
  // positive (weights are inverse variances); exact scans get a 1e-9 floor.
  scan.noise.sigma_rho = std::max(noise.sigma_rho, 1e-9);
  scan.noise.sigma_theta = std::max(noise.sigma_theta, 1e-9);

  scan.points.reserve(static_cast<std::size_t>(n_rays));
  const double step = 2.0 * M_PI / n_rays;
  for (int k = 0; k < n_rays; ++k) {
    double bearing = -M_PI + k * step;               // sensor frame
    double world_dir = pose.heading + bearing;       // world frame
    double dirx = std::cos(world_dir), diry = std::sin(world_dir);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : world.segments) {
      double t;
      if (ray_hit(pose.x, pose.y, dirx, diry, s, t)) best = std::min(best, t);
    }
    if (!std::isfinite(best)) continue;  // miss: omitted, no sentinel range

    double rho = best, theta = bearing;
    if (noise.sigma_rho > 0.0 || noise.sigma_theta > 0.0) {
      NormalStream ns(substream_seed(seed, static_cast<std::uint64_t>(k)));
      rho += noise.sigma_rho * ns.next();
      theta = normalize_angle(theta + noise.sigma_theta * ns.next());
    }
    if (!(rho > 0.0)) continue;  // noise pushed the range non-positive
    scan.points.push_back({rho, theta});
  }

  std::stable_sort(scan.points.begin(), scan.points.end(),
                   [](const PolarPoint& a, const PolarPoint& b) { return a.theta < b.theta; });
  // Strictly increasing bearings: drop the later ray on an exact tie.
  auto last = std::unique(scan.points.begin(), scan.points.end(),
                          [](const PolarPoint& a, const PolarPoint& b) { return a.theta == b.theta; });
  scan.points.erase(last, scan.points.end());
  return scan;
}

std::vector<std::pair<double, double>> ground_truth_corners(const WorldModel& world) {
  validate(world);
  std::vector<std::pair<double, double>> corners;
  auto joined = [](const WallSegment& a, const WallSegment& b, double& cx, double& cy) {
    if (a.x2 == b.x1 && a.y2 == b.y1) {
      cx = a.x2;
      cy = a.y2;
      return true;
    }
    return false;
  };
  const auto& segs = world.segments;
  for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
    double cx, cy;
    if (joined(segs[i], segs[i + 1], cx, cy)) corners.emplace_back(cx, cy);
  }
  if (segs.size() > 2) {  // closed loop: last wall meets the first
    double cx, cy;
    if (joined(segs.back(), segs.front(), cx, cy)) corners.emplace_back(cx, cy);
  }
  return corners;
}

}  // namespace csf
