#include "csf/fit_input.hpp"

#include <cmath>

#include "csf/errors.hpp"

namespace csf {

namespace {

FitInput build(const std::vector<PolarPoint>& pts, const NoiseModel& noise, WeightMode mode,
               SegmentSpan span) {
  FitInput in;
  in.polar = pts;
  in.mode = mode;
  in.noise = noise;
  in.span = span;
  in.xs.reserve(pts.size());
  in.ys.reserve(pts.size());
  in.w.reserve(pts.size());
  for (const auto& p : pts) {
    auto [x, y] = polar_to_cartesian(p);
    in.xs.push_back(x);
    in.ys.push_back(y);
    in.w.push_back(mode == WeightMode::unit ? 1.0 : point_weight(p, noise));
  }
  validate(in);
  return in;
}

}  // namespace

FitInput make_fit_input(const PolarScan& scan, const SegmentSpan& span, WeightMode mode) {
  if (span.start < 0 || span.end >= static_cast<int>(scan.points.size()) || span.start > span.end)
    throw validation_error("segment span out of scan bounds");
  std::vector<PolarPoint> pts(scan.points.begin() + span.start, scan.points.begin() + span.end + 1);
  return build(pts, scan.noise, mode, span);
}

FitInput make_fit_input(const std::vector<PolarPoint>& points, const NoiseModel& noise,
                        WeightMode mode) {
  return build(points, noise, mode, {0, static_cast<int>(points.size()) - 1});
}

void validate(const FitInput& in) {
  if (in.size() < 2) throw validation_error("a line fit needs at least 2 points");
  validate(in.noise);
  for (std::size_t i = 0; i < in.size(); ++i) {
    validate(in.polar[i]);
    if (!(in.w[i] > 0.0) || !std::isfinite(in.w[i]))
      throw validation_error("non-positive weight at point " + std::to_string(i));
  }
}

}  // namespace csf
