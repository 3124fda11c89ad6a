#pragma once

#include <Eigen/Dense>

#include "csf/fit_input.hpp"

namespace csf {

// Line as (r, alpha): perpendicular distance to the origin and the bearing of
// the line normal, the Arras-Siegwart parametrization.
struct PolarLine {
  double r = 0.0;      // meters, >= 0 (fixtures keep it > 0)
  double alpha = 0.0;  // radians, [-pi, pi)
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  SegmentSpan support{0, 0};
};

// published: the double sums of the alpha formula are evaluated literally,
//   O(n^2), and the covariance partials re-evaluate their inner sums per
//   point (O(n^2) total) - this is the form the timing tables characterize.
// factored: the same quantities from O(n) moment accumulations
//   (sum_i sum_j w_i w_j rho_i rho_j cos t_i sin t_j = Sx Sy, and the
//   cos(t_i + t_j) double sum = Sx^2 - Sy^2).
// Both modes agree to machine precision; only `published` feeds benchmarks.
enum class ArrasMode { published, factored };

// Weighted total-least-squares in polar form:
//   alpha = 1/2 atan2((2/Sw) SUM w_i w_j rho_i rho_j cos t_i sin t_j - SUM w rho^2 sin 2t,
//                     (1/Sw) SUM w_i w_j rho_i rho_j cos(t_i + t_j) - SUM w rho^2 cos 2t)
//   r     = (SUM w_i rho_i cos(t_i - alpha)) / Sw,  flipped by pi if negative.
// The atan2 branch picks the residual-minimizing normal direction.
PolarLine fit_line_arras(const FitInput& in, ArrasMode mode = ArrasMode::published);

// C = sr^2 sum_i (d(r,a)/drho_i)(.)^T + st^2 sum_i (d(r,a)/dtheta_i)(.)^T with
// analytic partials of the fit formulas (weight rho-dependence included).
Eigen::Matrix2d arras_line_covariance(const PolarLine& line, const FitInput& in,
                                      ArrasMode mode = ArrasMode::published);

// Full analytic Jacobian, columns [drho_0.., dtheta_0..]; for oracle tests.
Eigen::Matrix<double, 2, Eigen::Dynamic> arras_fit_jacobian(const PolarLine& line,
                                                            const FitInput& in,
                                                            ArrasMode mode = ArrasMode::published);

}  // namespace csf
