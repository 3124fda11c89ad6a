#pragma once

#include <vector>

#include "csf/scan.hpp"

namespace csf {

struct SegmentSpan {
  int start = 0, end = 0;  // inclusive indices into the source scan
  int count() const { return end - start + 1; }
};

struct SegmentationConfig {
  double threshold_m = 0.02;  // line-tracking gate; 20 mm default
  int min_points = 5;         // below this, corner Jacobians get ill-conditioned
  double max_range_m = 40.0;  // points beyond are dropped and break the run
};

// Classic line tracking: a segment grows while each next point stays within
// threshold_m of the line fitted (unweighted orthogonal fit) to the points
// accumulated so far; otherwise the segment closes and a new one seeds from
// the next two points. Runs shorter than min_points are discarded. The sweep
// wrap is not bridged: first and last segments stay separate.
std::vector<SegmentSpan> segment_scan(const PolarScan& scan, double threshold_m, int min_points,
                                      double max_range_m = 40.0);

inline std::vector<SegmentSpan> segment_scan(const PolarScan& scan, const SegmentationConfig& cfg) {
  return segment_scan(scan, cfg.threshold_m, cfg.min_points, cfg.max_range_m);
}

}  // namespace csf
