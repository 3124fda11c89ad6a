#include "csf/scan.hpp"

#include <cmath>

#include "csf/errors.hpp"

namespace csf {

double normalize_angle(double rad) {
  double a = std::remainder(rad, 2.0 * M_PI);  // (-pi, pi]
  if (a == M_PI) a = -M_PI;
  // remainder can return -0.0; keep +0.0 so serialized angles are stable
  if (a == 0.0) a = 0.0;
  return a;
}

void validate(const PolarPoint& p) {
  if (!(p.rho > 0.0) || !std::isfinite(p.rho))
    throw validation_error("range must be finite and > 0, got " + std::to_string(p.rho));
  if (!std::isfinite(p.theta) || p.theta < -M_PI || p.theta >= M_PI)
    throw validation_error("bearing must be finite and in [-pi, pi), got " + std::to_string(p.theta));
}

void validate(const NoiseModel& n) {
  if (!(n.sigma_rho > 0.0) || !std::isfinite(n.sigma_rho))
    throw validation_error("sigma_rho must be finite and > 0");
  if (!(n.sigma_theta > 0.0) || !std::isfinite(n.sigma_theta))
    throw validation_error("sigma_theta must be finite and > 0");
}

void validate(const PolarScan& s) {
  validate(s.noise);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    try {
      validate(s.points[i]);
    } catch (const validation_error& e) {
      throw validation_error("point " + std::to_string(i) + ": " + e.what());
    }
    if (i > 0 && !(s.points[i - 1].theta < s.points[i].theta))
      throw validation_error("points must have strictly increasing bearing (violated at index " +
                             std::to_string(i) + ")");
  }
}

std::pair<double, double> polar_to_cartesian(const PolarPoint& p) {
  return {p.rho * std::cos(p.theta), p.rho * std::sin(p.theta)};
}

std::pair<double, double> invert_point(double x, double y) {
  double m2 = x * x + y * y;
  if (m2 == 0.0) throw geometry_error("inversion undefined at the origin");
  return {x / m2, -y / m2};
}

Eigen::Matrix2d point_covariance(const PolarPoint& p, const NoiseModel& n) {
  double c = std::cos(p.theta), s = std::sin(p.theta);
  double vr = n.sigma_rho * n.sigma_rho;
  double vt = p.rho * p.rho * n.sigma_theta * n.sigma_theta;
  Eigen::Matrix2d cov;
  cov(0, 0) = vr * c * c + vt * s * s;
  cov(1, 1) = vr * s * s + vt * c * c;
  cov(0, 1) = cov(1, 0) = (vr - vt) * s * c;
  return cov;
}

double point_weight(const PolarPoint& p, const NoiseModel& n) {
  return 1.0 / (n.sigma_rho * n.sigma_rho * p.rho * p.rho * n.sigma_theta * n.sigma_theta);
}

}  // namespace csf
