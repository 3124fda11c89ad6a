#include <doctest.h>

#include <cmath>
#include <numbers>

#include "csf/errors.hpp"
#include "csf/fit_input.hpp"
#include "csf/scan.hpp"

using namespace csf;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("normalize_angle wraps into [-pi, pi), +pi maps to -pi") {
  CHECK(normalize_angle(0.0) == doctest::Approx(0.0));
  CHECK(normalize_angle(pi) == doctest::Approx(-pi));
  CHECK(normalize_angle(-pi) == doctest::Approx(-pi));
  CHECK(normalize_angle(2 * pi) == doctest::Approx(0.0));
  CHECK(normalize_angle(3 * pi) == doctest::Approx(-pi));
  CHECK(normalize_angle(-3 * pi / 2) == doctest::Approx(pi / 2));
  CHECK(normalize_angle(7.5 * pi) == doctest::Approx(-pi / 2));
  for (double a : {-9.7, -3.2, 0.4, 2.9, 14.1}) {
    double w = normalize_angle(a);
    CHECK(w >= -pi);
    CHECK(w < pi);
    CHECK(std::remainder(w - a, 2 * pi) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("polar_to_cartesian on axis-aligned and diagonal points") {
  auto [x0, y0] = polar_to_cartesian({2.0, 0.0});
  CHECK(x0 == doctest::Approx(2.0));
  CHECK(y0 == doctest::Approx(0.0));
  auto [x1, y1] = polar_to_cartesian({2.0, pi / 2});
  CHECK(x1 == doctest::Approx(0.0));
  CHECK(y1 == doctest::Approx(2.0));
  auto [x2, y2] = polar_to_cartesian({std::sqrt(2.0), pi / 4});
  CHECK(x2 == doctest::Approx(1.0));
  CHECK(y2 == doctest::Approx(1.0));
}

TEST_CASE("invert_point is the phase-negating inversion w = 1/z") {
  // 1/(2+0i) = 0.5, 1/(1+i) = (1-i)/2.
  auto [u0, v0] = invert_point(2.0, 0.0);
  CHECK(u0 == doctest::Approx(0.5));
  CHECK(v0 == doctest::Approx(0.0));
  auto [u1, v1] = invert_point(1.0, 1.0);
  CHECK(u1 == doctest::Approx(0.5));
  CHECK(v1 == doctest::Approx(-0.5));

  // Involution, reciprocal modulus, negated phase on a generic point.
  double x = -1.7, y = 0.9;
  auto [u, v] = invert_point(x, y);
  CHECK(std::hypot(u, v) == doctest::Approx(1.0 / std::hypot(x, y)).epsilon(1e-14));
  CHECK(std::atan2(v, u) == doctest::Approx(-std::atan2(y, x)).epsilon(1e-14));
  auto [xb, yb] = invert_point(u, v);
  CHECK(xb == doctest::Approx(x).epsilon(1e-14));
  CHECK(yb == doctest::Approx(y).epsilon(1e-14));
}

TEST_CASE("point_covariance: axis-aligned structure and determinant identity") {
  NoiseModel n;  // 0.05 m, 0.0034121 rad
  PolarPoint p{2.0, 0.0};
  Eigen::Matrix2d c = point_covariance(p, n);
  // At theta = 0 the range error is purely x, the bearing error purely y.
  CHECK(c(0, 0) == doctest::Approx(n.sigma_rho * n.sigma_rho).epsilon(1e-15));
  CHECK(c(1, 1) == doctest::Approx(4.0 * n.sigma_theta * n.sigma_theta).epsilon(1e-15));
  CHECK(c(0, 1) == doctest::Approx(0.0));
  CHECK(c(1, 0) == c(0, 1));

  // det C = sr^2 rho^2 st^2 at any bearing: the cross term's minus sign.
  for (double th : {-2.1, -0.3, 0.7, 1.9}) {
    PolarPoint q{3.3, th};
    Eigen::Matrix2d cq = point_covariance(q, n);
    double det = cq(0, 0) * cq(1, 1) - cq(0, 1) * cq(1, 0);
    double expect = n.sigma_rho * n.sigma_rho * q.rho * q.rho * n.sigma_theta * n.sigma_theta;
    CHECK(det == doctest::Approx(expect).epsilon(1e-12));
    CHECK(cq(0, 1) == doctest::Approx((n.sigma_rho * n.sigma_rho -
                                       q.rho * q.rho * n.sigma_theta * n.sigma_theta) *
                                      std::sin(th) * std::cos(th))
                          .epsilon(1e-12));
  }
}

TEST_CASE("point_weight is the inverse covariance determinant") {
  NoiseModel n;
  PolarPoint p{1.0, 0.42};
  double w = point_weight(p, n);
  CHECK(w == doctest::Approx(1.0 / (n.sigma_rho * n.sigma_rho * n.sigma_theta * n.sigma_theta))
                 .epsilon(1e-12));
  Eigen::Matrix2d c = point_covariance(p, n);
  CHECK(w * (c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  // Bearing independence.
  CHECK(point_weight({1.0, -2.0}, n) == doctest::Approx(w).epsilon(1e-15));
}

TEST_CASE("FitInput::weight_drho matches a finite difference of the weight") {
  NoiseModel n;
  std::vector<PolarPoint> pts{{2.0, 0.1}, {2.5, 0.2}, {3.0, 0.3}};
  FitInput in = make_fit_input(pts, n);
  const double h = 1e-6;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double wp = point_weight({pts[i].rho + h, pts[i].theta}, n);
    double wm = point_weight({pts[i].rho - h, pts[i].theta}, n);
    double fd = (wp - wm) / (2 * h);
    CHECK(in.weight_drho(i) == doctest::Approx(fd).epsilon(1e-8));
    CHECK(in.weight_drho(i) == doctest::Approx(-2.0 * in.w[i] / pts[i].rho).epsilon(1e-15));
  }
  FitInput unit = make_fit_input(pts, n, WeightMode::unit);
  CHECK(unit.w[0] == 1.0);
  CHECK(unit.weight_drho(0) == 0.0);
}

TEST_CASE("validation rejects bad points, noise models, and unsorted scans") {
  CHECK_THROWS_AS(validate(PolarPoint{0.0, 0.0}), validation_error);
  CHECK_THROWS_AS(validate(PolarPoint{-1.0, 0.0}), validation_error);
  CHECK_THROWS_AS(validate(NoiseModel{0.0, 0.001}), validation_error);
  CHECK_THROWS_AS(validate(NoiseModel{0.05, -1.0}), validation_error);

  PolarScan s;
  s.points = {{1.0, 0.2}, {1.0, 0.1}};  // decreasing bearing
  CHECK_THROWS_AS(validate(s), validation_error);
  s.points = {{1.0, 0.1}, {1.0, 0.1}};  // tie
  CHECK_THROWS_AS(validate(s), validation_error);
  s.points = {{1.0, 0.1}, {1.0, 0.2}};
  CHECK_NOTHROW(validate(s));

  CHECK_THROWS_AS(make_fit_input(std::vector<PolarPoint>{{1.0, 0.0}}, NoiseModel{}),
                  validation_error);
}
