#pragma once

#include <Eigen/Dense>

#include "csf/fit_input.hpp"

namespace csf {

// Implicit line a x + b y + c = 0 with a^2 + b^2 = 1. Sign convention:
// c <= 0 (the normal (a, b) points from the origin toward the line),
// tie-broken by a > 0 then b > 0 when c = 0.
struct ImplicitLine {
  double a = 1.0, b = 0.0, c = 0.0;
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  bool cov_reliable = true;  // false when the scatter eigen-gap is too small
  SegmentSpan support{0, 0};
};

// Row-scaled constrained least squares: each point contributes the equation
// w_i (a x_i + b y_i + c) = 0, and the stack is solved by Lagrange-multiplier
// least squares under a^2 + b^2 = 1 - i.e. the minimized quadratic carries
// w_i^2. That squared weighting is what distinguishes this baseline from the
// (r, alpha) fitter (which weighs squared residuals by w_i): the two recover
// identical lines on noise-free data but propagate noise differently, and the
// squared form is measurably less accurate on varied-range segments.
// Solution: c = -(a xbar + b ybar) at the w^2-weighted centroid, (a, b) the
// smallest-eigenvalue eigenvector of the centered w^2-weighted scatter.
// Unit-weight mode drops the weighting entirely (1^2 = 1).
ImplicitLine fit_line_siadat(const FitInput& in);

// C_abc = sr^2 sum_i (d(a,b,c)/drho_i)(.)^T + st^2 sum_i (d(a,b,c)/dtheta_i)(.)^T.
// (a, b) partials via first-order eigenvector perturbation of the scatter;
// c partials chain through the centroid. Rank <= 2: the normalization removes
// the (a, b, 0) gauge direction. When the scatter eigen-gap falls below 1e-9
// relative the result is flagged unreliable via `reliable` (never silently).
Eigen::Matrix3d siadat_line_covariance(const ImplicitLine& line, const FitInput& in,
                                       bool* reliable = nullptr);

// Full analytic Jacobian of (a, b, c), columns [drho_0.., dtheta_0..];
// signs match the returned line's sign convention. For oracle tests.
Eigen::Matrix<double, 3, Eigen::Dynamic> siadat_fit_jacobian(const ImplicitLine& line,
                                                             const FitInput& in);

}  // namespace csf
