#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "csf/fit_arras.hpp"
#include "support/oracles.hpp"

using namespace csf;
using csf::test::fd_fit_jacobian;
using csf::test::points_on_line;
using csf::test::rel_err;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<PolarPoint> to_polar(const std::vector<std::pair<double, double>>& xy) {
  std::vector<PolarPoint> pts;
  for (auto& [x, y] : xy) pts.push_back({std::hypot(x, y), std::atan2(y, x)});
  return pts;
}

Eigen::VectorXd refit_ra(const FitInput& in) {
  PolarLine l = fit_line_arras(in);
  return Eigen::Vector2d(l.r, l.alpha);
}

std::vector<PolarPoint> jittered_line(double r, double alpha, double t0, double t1, int n) {
  auto pts = points_on_line(r, alpha, t0, t1, n);
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i].rho += 0.01 * std::sin(11.0 * i + 1.0);
  return pts;
}

}  // namespace

TEST_CASE("exact recovery with the residual-minimizing atan2 branch") {
  NoiseModel n;
  PolarLine v = fit_line_arras(make_fit_input(to_polar({{2, 0}, {2, 1}, {2, -1}}), n));
  CHECK(v.r == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(v.alpha == doctest::Approx(0.0));

  PolarLine h = fit_line_arras(make_fit_input(to_polar({{0, 3}, {1, 3}, {-2, 3}}), n));
  CHECK(h.r == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(h.alpha == doctest::Approx(pi / 2).epsilon(1e-14));

  double s2 = std::sqrt(2.0);
  PolarLine d = fit_line_arras(make_fit_input(to_polar({{2 * s2, 0}, {0, 2 * s2}, {s2, s2}}), n));
  CHECK(d.r == doctest::Approx(2.0 * s2 * s2 / 2).epsilon(1e-14));  // distance 2
  CHECK(d.alpha == doctest::Approx(pi / 4).epsilon(1e-14));
}

TEST_CASE("r stays nonnegative and alpha in [-pi, pi) across quadrants") {
  NoiseModel n;
  for (double alpha : {-2.9, -1.6, -0.4, 0.0, 1.1, 2.5}) {
    PolarLine l = fit_line_arras(make_fit_input(jittered_line(2.0, alpha, -1.0, 1.5, 9), n));
    CHECK(l.r > 0.0);
    CHECK(l.alpha >= -pi);
    CHECK(l.alpha < pi);
    CHECK(l.r == doctest::Approx(2.0).epsilon(0.02));
    CHECK(normalize_angle(l.alpha - alpha) == doctest::Approx(0.0).epsilon(0.02));
  }
}

TEST_CASE("published O(n^2) sums and factored O(n) moments agree to machine precision") {
  NoiseModel n;
  for (int npts : {3, 7, 24}) {
    FitInput in = make_fit_input(jittered_line(2.3, 0.9, -1.5, 2.0, npts), n);
    PolarLine lp = fit_line_arras(in, ArrasMode::published);
    PolarLine lf = fit_line_arras(in, ArrasMode::factored);
    CHECK(lp.r == doctest::Approx(lf.r).epsilon(1e-12));
    CHECK(lp.alpha == doctest::Approx(lf.alpha).epsilon(1e-12));
    Eigen::Matrix2d cp = arras_line_covariance(lp, in, ArrasMode::published);
    Eigen::Matrix2d cf = arras_line_covariance(lf, in, ArrasMode::factored);
    CHECK(rel_err(cp, cf) < 1e-12);
    CHECK(rel_err(arras_fit_jacobian(lp, in, ArrasMode::published),
                  arras_fit_jacobian(lf, in, ArrasMode::factored)) < 1e-12);
  }
}

TEST_CASE("analytic Jacobian matches central finite differences") {
  NoiseModel n;
  struct Fixture {
    double r, alpha, t0, t1;
    int npts;
  };
  for (const Fixture& f : {Fixture{2.0, 0.0, -1.0, 1.0, 3}, Fixture{2.0, 0.6, -1.0, 2.5, 5},
                           Fixture{3.5, -1.9, 0.5, 3.0, 12}, Fixture{1.2, 2.4, -0.8, 0.9, 30}}) {
    FitInput in = make_fit_input(jittered_line(f.r, f.alpha, f.t0, f.t1, f.npts), n);
    PolarLine l = fit_line_arras(in);
    CHECK(rel_err(arras_fit_jacobian(l, in), fd_fit_jacobian(in, refit_ra)) < 1e-5);
  }
}

TEST_CASE("covariance equals the Jacobian sandwich and respects symmetry") {
  NoiseModel n{0.03, 0.002};
  FitInput in = make_fit_input(jittered_line(2.5, 1.1, -2.0, 2.0, 15), n);
  PolarLine l = fit_line_arras(in);
  Eigen::Matrix2d cov = arras_line_covariance(l, in);

  Eigen::MatrixXd j = arras_fit_jacobian(l, in);
  Eigen::VectorXd var(2 * in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    var(i) = n.sigma_rho * n.sigma_rho;
    var(in.size() + i) = n.sigma_theta * n.sigma_theta;
  }
  CHECK(rel_err(cov, j * var.asDiagonal() * j.transpose()) < 1e-12);
  Eigen::MatrixXd jf = fd_fit_jacobian(in, refit_ra);
  CHECK(rel_err(cov, jf * var.asDiagonal() * jf.transpose()) < 1e-5);
  CHECK(cov(0, 0) > 0);
  CHECK(cov(1, 1) > 0);
  CHECK(cov.determinant() > 0);

  // A segment symmetric about its perpendicular foot decorrelates r and alpha.
  FitInput sym = make_fit_input(points_on_line(2.0, 0.7, -1.5, 1.5, 11), n);
  PolarLine ls = fit_line_arras(sym);
  Eigen::Matrix2d cs = arras_line_covariance(ls, sym);
  CHECK(std::fabs(cs(0, 1)) < 1e-3 * std::sqrt(cs(0, 0) * cs(1, 1)));
}

TEST_CASE("rotating the scene shifts alpha and leaves r and the covariance") {
  NoiseModel n;
  auto pts = jittered_line(2.2, 0.4, -0.5, 1.5, 8);
  FitInput in = make_fit_input(pts, n);
  PolarLine base = fit_line_arras(in);
  Eigen::Matrix2d cb = arras_line_covariance(base, in);

  double phi = 0.7;
  auto rot = pts;
  for (auto& p : rot) p.theta = normalize_angle(p.theta + phi);
  FitInput rin = make_fit_input(rot, n);
  PolarLine turned = fit_line_arras(rin);
  Eigen::Matrix2d ct = arras_line_covariance(turned, rin);

  CHECK(turned.r == doctest::Approx(base.r).epsilon(1e-12));
  CHECK(normalize_angle(turned.alpha - base.alpha - phi) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rel_err(cb, ct) < 1e-10);
}
