#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "csf/scan.hpp"

namespace csf {

struct WallSegment {
  double x1, y1, x2, y2;  // endpoints, meters, world frame
};

struct WorldModel {
  std::vector<WallSegment> segments;  // at least one, each longer than 1e-9 m
  std::string name;
};

struct Pose {
  double x = 0.0, y = 0.0;
  double heading = 0.0;  // radians, normalized to [-pi, pi)
};

void validate(const WorldModel& w);

// World file format: one `x1 y1 x2 y2` per line (meters), '#' comments allowed.
WorldModel load_world(const std::string& path);
void save_world(const WorldModel& world, const std::string& path);

// Casts n_rays bearings uniformly over [-pi, pi) in the sensor frame. The true
// range of a ray is its nearest wall intersection; rays that hit nothing are
// omitted. Gaussian noise (sigma_rho on range, sigma_theta on bearing) comes
// from per-ray substreams of the given seed (splitmix64 -> mt19937_64 ->
// Box-Muller), so results are byte-stable and independent of casting order.
// Zero sigmas are accepted and produce exact ranges; the scan's attached noise
// model floors them at 1e-9 to keep downstream weights finite.
// Output points are sorted by their (noisy) bearing; noisy ranges <= 0 are
// dropped; exact bearing ties drop the later ray.
PolarScan cast_scan(const WorldModel& world, const Pose& pose, int n_rays, const NoiseModel& noise,
                    std::uint64_t seed);

// Shared endpoints of list-consecutive wall segments (closing the loop when
// the last segment ends where the first begins).
std::vector<std::pair<double, double>> ground_truth_corners(const WorldModel& world);

}  // namespace csf
