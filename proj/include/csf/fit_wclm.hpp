#pragma once

#include <Eigen/Dense>
#include <utility>

#include "csf/fit_input.hpp"

namespace csf {

// A line that does not pass through the origin is fully described by the
// inversion point Q = image of the perpendicular foot P under w = 1/z.
// Every point (x_j, y_j) on the line satisfies the linear constraint
//   x_Q x_j - y_Q y_j = 1.
struct InversionPointLine {
  double xq = 0.0, yq = 0.0;  // coordinates of Q, units 1/m
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  SegmentSpan support{0, 0};
};

// Minimizes sum_i w_i (x_Q x_i - y_Q y_i - 1)^2 via the 2x2 weighted normal
// equations. Throws geometry_error when the normal matrix is singular to
// 1e-12 relative (line through or nearly through the origin, or a repeated
// point). Covariance left zero; see wclm_line_covariance.
InversionPointLine fit_line_wclm(const FitInput& in);

// First-order covariance of Q: C = sr^2 sum_i (dQ/drho_i)(dQ/drho_i)^T
//                                + st^2 sum_i (dQ/dtheta_i)(dQ/dtheta_i)^T,
// with analytic partials from differentiating the normal-equation solution
// (dQ/dp = N^{-1} (db/dp - dN/dp Q)), including the weights' rho dependence.
Eigen::Matrix2d wclm_line_covariance(const InversionPointLine& line, const FitInput& in);

// Full analytic Jacobian of (x_Q, y_Q): columns [drho_0..drho_{n-1},
// dtheta_0..dtheta_{n-1}]. The covariance above is the streaming form of
// J diag(sr^2.., st^2..) J^T; this explicit form exists for oracle tests.
Eigen::Matrix<double, 2, Eigen::Dynamic> wclm_fit_jacobian(const InversionPointLine& line,
                                                           const FitInput& in);

// (r, alpha) view of the line: r = 1/|Q|, alpha = atan2(-yq, xq). The sign
// undoes the phase negation of the inversion.
std::pair<double, double> inversion_line_to_polar(const InversionPointLine& line);

}  // namespace csf
