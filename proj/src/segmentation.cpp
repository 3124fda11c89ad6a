#include "csf/segmentation.hpp"

#include <cmath>

#include "csf/errors.hpp"

namespace csf {

namespace {

// Incremental unweighted orthogonal (total least squares) line through the
// running point set. Kept as raw moment sums so admit/close are O(1).
struct RunningLine {
  int n = 0;
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;

  void add(double x, double y) {
    ++n;
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }

  // Perpendicular distance of (x, y) to the current fitted line.
  double distance(double x, double y) const {
    double cx = sx / n, cy = sy / n;
    double suu = sxx - sx * sx / n;
    double svv = syy - sy * sy / n;
    double suv = sxy - sx * sy / n;
    // Normal direction of the TLS line: alpha = 0.5 atan2(-2 Suv, Svv - Suu).
    double alpha = 0.5 * std::atan2(-2.0 * suv, svv - suu);
    return std::fabs(std::cos(alpha) * (x - cx) + std::sin(alpha) * (y - cy));
  }
};

}  // namespace

std::vector<SegmentSpan> segment_scan(const PolarScan& scan, double threshold_m, int min_points,
                                      double max_range_m) {
  if (!(threshold_m > 0.0)) throw validation_error("segmentation threshold must be > 0");
  if (min_points < 2) throw validation_error("min_points must be >= 2");

  std::vector<SegmentSpan> spans;
  const int n = static_cast<int>(scan.points.size());
  if (n < 2) return spans;

  int run_start = -1;  // index of the first point of the current run, -1 = none
  int run_prev = -1;   // last admitted index
  RunningLine line;

  auto close_run = [&](int run_end) {
    if (run_start >= 0 && run_end - run_start + 1 >= min_points)
      spans.push_back({run_start, run_end});
    run_start = -1;
    line = RunningLine{};
  };

  for (int i = 0; i < n; ++i) {
    const auto& p = scan.points[i];
    if (p.rho > max_range_m) {  // over-range: drop the point and break the run
      close_run(run_prev);
      continue;
    }
    auto [x, y] = polar_to_cartesian(p);
    if (run_start < 0) {
      run_start = run_prev = i;
      line.add(x, y);
      continue;
    }
    if (line.n == 1 || line.distance(x, y) <= threshold_m) {
      line.add(x, y);
      run_prev = i;
    } else {
      close_run(run_prev);
      run_start = run_prev = i;  // reseed from this point; next one completes the pair
      line.add(x, y);
    }
  }
  close_run(run_prev);
  return spans;
}

}  // namespace csf
