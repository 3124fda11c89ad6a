#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

namespace csf {

// Bearing convention: radians in [-pi, pi); exactly +pi wraps to -pi.
double normalize_angle(double rad);

struct PolarPoint {
  double rho;    // range, meters, > 0
  double theta;  // bearing, radians, in [-pi, pi)
};

struct NoiseModel {
  // Defaults are RPLiDAR S1-class figures: 0.05 m range deviation and half
  // the 0.391 deg angular step as bearing deviation.
  double sigma_rho = 0.05;       // meters, > 0
  double sigma_theta = 0.0034121;  // radians, > 0
};

struct PolarScan {
  std::vector<PolarPoint> points;  // strictly increasing theta
  NoiseModel noise;
  std::string metadata;

  std::size_t size() const { return points.size(); }
};

struct CartesianPointWithCov {
  double x = 0.0, y = 0.0;       // meters
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
};

void validate(const PolarPoint& p);
void validate(const NoiseModel& n);
// Checks every point plus the strictly-increasing-theta ordering.
void validate(const PolarScan& s);

std::pair<double, double> polar_to_cartesian(const PolarPoint& p);

// Complex inversion w = 1/z (phase negation): z = |z|e^{i theta} maps to
// (1/|z|)e^{-i theta}. Lines not through the origin map to circles through it.
// Note the other common convention w = 1/conj(z) does NOT negate the phase.
std::pair<double, double> invert_point(double x, double y);

// First-order propagation of (sigma_rho, sigma_theta) through the polar ->
// Cartesian change of coordinates:
//   Vx  = sr^2 cos^2 t + rho^2 st^2 sin^2 t
//   Vy  = sr^2 sin^2 t + rho^2 st^2 cos^2 t
//   Cxy = (sr^2 - rho^2 st^2) sin t cos t
// The minus sign in the cross term is what makes det = sr^2 rho^2 st^2.
Eigen::Matrix2d point_covariance(const PolarPoint& p, const NoiseModel& n);

// omega = 1 / (sr^2 rho^2 st^2): the inverse determinant of point_covariance.
// Depends only on rho, not the bearing (frame-independent).
double point_weight(const PolarPoint& p, const NoiseModel& n);

}  // namespace csf
