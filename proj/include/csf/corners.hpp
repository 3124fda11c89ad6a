#pragma once

#include <Eigen/Dense>

#include "csf/fit_arras.hpp"
#include "csf/fit_siadat.hpp"
#include "csf/fit_wclm.hpp"

namespace csf {

struct CornerFeature {
  double x = 0.0, y = 0.0;  // meters, sensor frame
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  int line1 = -1, line2 = -1;  // ids of the two contributing line features
};

// Intersection of the two constraint lines x_Q x - y_Q y = 1. Throws
// geometry_error when |det| <= 1e-12 |Q1||Q2| (parallel / identical lines).
// The corner and its covariance are invariant (bit-exact) under swapping the
// two inputs: arguments are canonicalized internally.
CornerFeature corner_wclm(const InversionPointLine& l1, const InversionPointLine& l2);
// C = J blockdiag(C_Q1, C_Q2) J^T with the analytic 2x4 intersection Jacobian.
Eigen::Matrix2d corner_wclm_covariance(const CornerFeature& c, const InversionPointLine& l1,
                                       const InversionPointLine& l2);

// x = (r1 sin a2 - r2 sin a1)/sin(a2 - a1), y = (r2 cos a1 - r1 cos a2)/sin(a2 - a1).
// Throws when |sin(a2 - a1)| <= 1e-6.
CornerFeature corner_arras(const PolarLine& l1, const PolarLine& l2);
Eigen::Matrix2d corner_arras_covariance(const CornerFeature& c, const PolarLine& l1,
                                        const PolarLine& l2);

// x = (b1 c2 - b2 c1)/(a1 b2 - a2 b1), y = (a2 c1 - a1 c2)/(a1 b2 - a2 b1).
// Throws when |a1 b2 - a2 b1| <= 1e-12. Covariance via the 2x6 Jacobian.
CornerFeature corner_siadat(const ImplicitLine& l1, const ImplicitLine& l2);
Eigen::Matrix2d corner_siadat_covariance(const CornerFeature& c, const ImplicitLine& l1,
                                         const ImplicitLine& l2);

}  // namespace csf
