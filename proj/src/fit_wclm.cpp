#include "csf/fit_wclm.hpp"

#include <cmath>

#include "csf/errors.hpp"

namespace csf {

namespace {

struct Moments {
  double sxx = 0, syy = 0, sxy = 0, sx = 0, sy = 0;
};

Moments accumulate(const FitInput& in) {
  // Weights are ~1e7 m^-4, so these sums span many orders of magnitude;
  // long double keeps the cancellation in the normal equations benign.
  long double sxx = 0, syy = 0, sxy = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    long double w = in.w[i], x = in.xs[i], y = in.ys[i];
    sxx += w * x * x;
    syy += w * y * y;
    sxy += w * x * y;
    sx += w * x;
    sy += w * y;
  }
  return {static_cast<double>(sxx), static_cast<double>(syy), static_cast<double>(sxy),
          static_cast<double>(sx), static_cast<double>(sy)};
}

// Per-point partials of Q along rho_k and theta_k, from differentiating the
// normal-equation solution: dQ/dp = N^{-1} (db/dp - dN/dp Q).
// Shared by the covariance accumulation and the test-facing Jacobian.
struct PartialContext {
  Eigen::Matrix2d Ninv;
  Eigen::Vector2d q;
};

void point_partials(const PartialContext& ctx, const FitInput& in, std::size_t k,
                    Eigen::Vector2d& dq_rho, Eigen::Vector2d& dq_theta) {
  const double w = in.w[k], x = in.xs[k], y = in.ys[k];
  const double ct = std::cos(in.polar[k].theta), st = std::sin(in.polar[k].theta);
  const double dw = in.weight_drho(k);

  // rho_k direction: dx = cos t, dy = sin t, plus the weight's own rho term.
  Eigen::Matrix2d dN;
  double dxy = dw * x * y + w * (ct * y + x * st);
  dN << dw * x * x + 2.0 * w * x * ct, -dxy, -dxy, dw * y * y + 2.0 * w * y * st;
  Eigen::Vector2d db(dw * x + w * ct, -(dw * y + w * st));
  dq_rho = ctx.Ninv * (db - dN * ctx.q);

  // theta_k direction: dx = -y, dy = x, weight unaffected.
  double dxy_t = w * (x * x - y * y);
  dN << -2.0 * w * x * y, -dxy_t, -dxy_t, 2.0 * w * x * y;
  db = Eigen::Vector2d(-w * y, -w * x);
  dq_theta = ctx.Ninv * (db - dN * ctx.q);
}

PartialContext make_context(const InversionPointLine& line, const FitInput& in) {
  Moments m = accumulate(in);
  Eigen::Matrix2d N;
  N << m.sxx, -m.sxy, -m.sxy, m.syy;
  return {N.inverse(), Eigen::Vector2d(line.xq, line.yq)};
}

}  // namespace

InversionPointLine fit_line_wclm(const FitInput& in) {
  validate(in);
  Moments m = accumulate(in);
  // Normal equations of the constraint residual x_Q x - y_Q y - 1:
  //   [ Sxx  -Sxy ] [x_Q]   [ Sx ]
  //   [-Sxy   Syy ] [y_Q] = [-Sy ]
  double det = m.sxx * m.syy - m.sxy * m.sxy;
  double scale = std::max({std::fabs(m.sxx), std::fabs(m.syy), std::fabs(m.sxy)});
  if (!(std::fabs(det) > 1e-12 * scale * scale))
    throw geometry_error(
        "degenerate fit: weighted scatter is singular (line through the origin or repeated "
        "points)");
  InversionPointLine line;
  line.xq = (m.syy * m.sx - m.sxy * m.sy) / det;
  line.yq = (m.sxy * m.sx - m.sxx * m.sy) / det;
  line.support = in.span;
  return line;
}

Eigen::Matrix2d wclm_line_covariance(const InversionPointLine& line, const FitInput& in) {
  PartialContext ctx = make_context(line, in);
  const double vr = in.noise.sigma_rho * in.noise.sigma_rho;
  const double vt = in.noise.sigma_theta * in.noise.sigma_theta;
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  Eigen::Vector2d dr, dt;
  for (std::size_t k = 0; k < in.size(); ++k) {
    point_partials(ctx, in, k, dr, dt);
    cov += vr * dr * dr.transpose() + vt * dt * dt.transpose();
  }
  cov(0, 1) = cov(1, 0) = 0.5 * (cov(0, 1) + cov(1, 0));
  return cov;
}

Eigen::Matrix<double, 2, Eigen::Dynamic> wclm_fit_jacobian(const InversionPointLine& line,
                                                           const FitInput& in) {
  PartialContext ctx = make_context(line, in);
  const auto n = static_cast<Eigen::Index>(in.size());
  Eigen::Matrix<double, 2, Eigen::Dynamic> J(2, 2 * n);
  Eigen::Vector2d dr, dt;
  for (Eigen::Index k = 0; k < n; ++k) {
    point_partials(ctx, in, static_cast<std::size_t>(k), dr, dt);
    J.col(k) = dr;
    J.col(n + k) = dt;
  }
  return J;
}

std::pair<double, double> inversion_line_to_polar(const InversionPointLine& line) {
  double mod = std::hypot(line.xq, line.yq);
  if (!(mod > 0.0)) throw geometry_error("inversion point at the origin has no polar form");
  return {1.0 / mod, std::atan2(-line.yq, line.xq)};
}

}  // namespace csf
