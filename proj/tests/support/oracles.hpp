#pragma once

// Independent oracles the fitter tests check against: central finite
// differences for the analytic Jacobians, Monte-Carlo resampling for the
// propagated covariances, and a QR least-squares solve that shares no code
// with the normal-equation path.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "csf/fit_input.hpp"
#include "csf/scan.hpp"

namespace csf::test {

// Fit callback: returns the parameter vector for one input, already put in
// whatever sign/branch convention the analytic Jacobian under test assumes.
using Refit = std::function<Eigen::VectorXd(const FitInput&)>;

// n evenly spaced points on the line with normal bearing alpha at distance r,
// parametrized by arc length t in [t0, t1] along the line direction.
inline std::vector<PolarPoint> points_on_line(double r, double alpha, double t0, double t1,
                                              int n) {
  std::vector<PolarPoint> pts;
  pts.reserve(n);
  const double nx = std::cos(alpha), ny = std::sin(alpha);
  for (int k = 0; k < n; ++k) {
    double t = n == 1 ? t0 : t0 + (t1 - t0) * k / (n - 1);
    double x = r * nx - t * ny;
    double y = r * ny + t * nx;
    pts.push_back({std::hypot(x, y), std::atan2(y, x)});
  }
  return pts;
}

// Central finite-difference Jacobian of refit(in) with respect to
// [rho_0..rho_{n-1}, theta_0..theta_{n-1}], the column layout the analytic
// *_fit_jacobian functions use.
inline Eigen::MatrixXd fd_fit_jacobian(const FitInput& in, const Refit& refit,
                                       double step = 1e-6) {
  const std::size_t n = in.size();
  Eigen::MatrixXd jac;
  for (std::size_t col = 0; col < 2 * n; ++col) {
    auto bumped = [&](double dir) {
      std::vector<PolarPoint> pts = in.polar;
      if (col < n)
        pts[col].rho += dir * step;
      else
        pts[col - n].theta += dir * step;
      return refit(make_fit_input(pts, in.noise, in.mode));
    };
    Eigen::VectorXd hi = bumped(+1.0), lo = bumped(-1.0);
    if (jac.size() == 0) jac.resize(hi.size(), 2 * n);
    jac.col(col) = (hi - lo) / (2.0 * step);
  }
  return jac;
}

// Relative disagreement between two matrices, Frobenius norm, floored so
// exact zeros compare clean.
inline double rel_err(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double scale = std::max({a.norm(), b.norm(), 1e-12});
  return (a - b).norm() / scale;
}

struct McStats {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;  // sample covariance over the draws
  int draws = 0;
};

// Re-noises the true points `draws` times with independent Gaussian range and
// bearing errors and accumulates the sample covariance of the refit
// parameters. Centering on the first draw keeps the accumulation stable.
inline McStats mc_covariance(const std::vector<PolarPoint>& truth, const NoiseModel& noise,
                             WeightMode mode, int draws, std::uint64_t seed,
                             const Refit& refit) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  std::vector<PolarPoint> noisy(truth.size());

  Eigen::VectorXd ref, sum;
  Eigen::MatrixXd outer;
  for (int d = 0; d < draws; ++d) {
    for (std::size_t i = 0; i < truth.size(); ++i)
      noisy[i] = {truth[i].rho + noise.sigma_rho * unit(gen),
                  truth[i].theta + noise.sigma_theta * unit(gen)};
    Eigen::VectorXd p = refit(make_fit_input(noisy, noise, mode));
    if (d == 0) {
      ref = p;
      sum = Eigen::VectorXd::Zero(p.size());
      outer = Eigen::MatrixXd::Zero(p.size(), p.size());
    }
    Eigen::VectorXd c = p - ref;
    sum += c;
    outer += c * c.transpose();
  }
  McStats s;
  s.draws = draws;
  Eigen::VectorXd mean_c = sum / draws;
  s.mean = ref + mean_c;
  s.cov = (outer - draws * mean_c * mean_c.transpose()) / (draws - 1);
  return s;
}

// Independent weighted least-squares estimate of the inversion point Q:
// rows sqrt(w_i) [x_i, -y_i] against sqrt(w_i) * 1, solved by column-pivoted
// QR instead of the 2x2 normal equations.
inline Eigen::Vector2d qr_inversion_point(const FitInput& in) {
  const auto n = static_cast<Eigen::Index>(in.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = std::sqrt(in.w[i]);
    a(i, 0) = s * in.xs[i];
    a(i, 1) = -s * in.ys[i];
    b(i) = s;
  }
  return a.colPivHouseholderQr().solve(b);
}

}  // namespace csf::test
