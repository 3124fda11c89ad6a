#pragma once

#include <vector>

#include "csf/scan.hpp"
#include "csf/segmentation.hpp"

namespace csf {

// Weight policy for the fitters. noise_model uses omega = 1/(sr^2 rho^2 st^2)
// per point (so d omega / d rho = -2 omega / rho enters the covariance chain
// rule); unit fixes omega = 1 (A/B experiments).
enum class WeightMode { noise_model, unit };

struct FitInput {
  std::vector<PolarPoint> polar;     // source (rho_i, theta_i)
  std::vector<double> xs, ys;        // cached Cartesian coordinates
  std::vector<double> w;             // per-point weights, all > 0
  WeightMode mode = WeightMode::noise_model;
  NoiseModel noise;
  SegmentSpan span;                  // provenance (optional; {0,0} if free-standing)

  std::size_t size() const { return polar.size(); }

  // d w[i] / d rho_i under the active weight policy.
  double weight_drho(std::size_t i) const {
    return mode == WeightMode::noise_model ? -2.0 * w[i] / polar[i].rho : 0.0;
  }
};

// Builds the input for one segment of a scan (or a free-standing point list).
FitInput make_fit_input(const PolarScan& scan, const SegmentSpan& span,
                        WeightMode mode = WeightMode::noise_model);
FitInput make_fit_input(const std::vector<PolarPoint>& points, const NoiseModel& noise,
                        WeightMode mode = WeightMode::noise_model);

void validate(const FitInput& in);

}  // namespace csf
