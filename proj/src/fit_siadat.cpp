#include "csf/fit_siadat.hpp"

#include <cmath>

#include "csf/errors.hpp"

namespace csf {

namespace {

// Effective weight of the quadratic form: the row scaling squares w_i.
inline double eff_weight(const FitInput& in, std::size_t i) {
  return in.mode == WeightMode::unit ? 1.0 : in.w[i] * in.w[i];
}
inline double eff_weight_drho(const FitInput& in, std::size_t i, double e) {
  // d(w^2)/drho = 2 w dw/drho = -4 w^2 / rho under noise-model weights.
  return in.mode == WeightMode::unit ? 0.0 : -4.0 * e / in.polar[i].rho;
}

struct Terms {
  double se = 0, sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;  // e-weighted raw moments
  double xbar = 0, ybar = 0;
  double suu = 0, svv = 0, suv = 0;  // centered scatter
  double lo = 0, hi = 0;             // eigenvalues, lo <= hi
  double a = 0, b = 0, c = 0;        // pre-convention solution
};

Terms solve(const FitInput& in) {
  Terms t;
  long double se = 0, sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    long double e = eff_weight(in, i), x = in.xs[i], y = in.ys[i];
    se += e;
    sx += e * x;
    sy += e * y;
    sxx += e * x * x;
    syy += e * y * y;
    sxy += e * x * y;
  }
  t.se = static_cast<double>(se);
  t.sx = static_cast<double>(sx);
  t.sy = static_cast<double>(sy);
  t.sxx = static_cast<double>(sxx);
  t.syy = static_cast<double>(syy);
  t.sxy = static_cast<double>(sxy);
  t.xbar = t.sx / t.se;
  t.ybar = t.sy / t.se;
  t.suu = t.sxx - t.sx * t.sx / t.se;
  t.svv = t.syy - t.sy * t.sy / t.se;
  t.suv = t.sxy - t.sx * t.sy / t.se;

  // 2x2 symmetric eigenproblem in closed form. The normal (a, b) is the
  // eigenvector of the smaller eigenvalue: minimizing direction of v^T S v.
  double h = 0.5 * (t.suu + t.svv), d = 0.5 * (t.suu - t.svv);
  double gap_half = std::hypot(d, t.suv);
  if (!(gap_half > 1e-12 * h))
    throw geometry_error("ambiguous line direction: point scatter is isotropic");
  t.lo = h - gap_half;
  t.hi = h + gap_half;
  double phi = 0.5 * std::atan2(-t.suv, -d);  // branch picks the minimizer
  t.a = std::cos(phi);
  t.b = std::sin(phi);
  t.c = -(t.a * t.xbar + t.b * t.ybar);
  return t;
}

double convention_sign(double a, double b, double c) {
  if (c != 0.0) return c < 0.0 ? 1.0 : -1.0;
  if (a != 0.0) return a > 0.0 ? 1.0 : -1.0;
  return b > 0.0 ? 1.0 : -1.0;
}

// Partials of the pre-convention (a, b, c) along rho_k and theta_k.
// Eigenvector perturbation: d(a,b) = [(v_perp^T dS v) / (lo - hi)] v_perp.
void point_partials(const Terms& t, const FitInput& in, std::size_t k, Eigen::Vector3d& d_rho,
                    Eigen::Vector3d& d_theta) {
  const double e = eff_weight(in, k);
  const double de = eff_weight_drho(in, k, e);
  const double x = in.xs[k], y = in.ys[k];
  const double ct = std::cos(in.polar[k].theta), st = std::sin(in.polar[k].theta);

  auto assemble = [&](double dse, double dsx, double dsy, double dsxx, double dsyy, double dsxy) {
    double dxbar = (dsx - t.xbar * dse) / t.se;
    double dybar = (dsy - t.ybar * dse) / t.se;
    double dsuu = dsxx - (2.0 * t.sx * dsx) / t.se + t.sx * t.sx * dse / (t.se * t.se);
    double dsvv = dsyy - (2.0 * t.sy * dsy) / t.se + t.sy * t.sy * dse / (t.se * t.se);
    double dsuv = dsxy - (dsx * t.sy + t.sx * dsy) / t.se + t.sx * t.sy * dse / (t.se * t.se);
    // v_perp^T dS v with v = (a, b), v_perp = (-b, a)
    double g = (t.a * t.b * (dsvv - dsuu) + (t.a * t.a - t.b * t.b) * dsuv) / (t.lo - t.hi);
    double da = -t.b * g, db = t.a * g;
    double dc = -(da * t.xbar + db * t.ybar + t.a * dxbar + t.b * dybar);
    return Eigen::Vector3d(da, db, dc);
  };

  d_rho = assemble(de, de * x + e * ct, de * y + e * st, de * x * x + 2.0 * e * x * ct,
                   de * y * y + 2.0 * e * y * st, de * x * y + e * (ct * y + x * st));
  d_theta = assemble(0.0, -e * y, e * x, -2.0 * e * x * y, 2.0 * e * x * y, e * (x * x - y * y));
}

}  // namespace

ImplicitLine fit_line_siadat(const FitInput& in) {
  validate(in);
  Terms t = solve(in);
  double s = convention_sign(t.a, t.b, t.c);
  ImplicitLine line;
  line.a = s * t.a;
  line.b = s * t.b;
  line.c = s * t.c;
  line.support = in.span;
  return line;
}

Eigen::Matrix3d siadat_line_covariance(const ImplicitLine& line, const FitInput& in,
                                       bool* reliable) {
  Terms t = solve(in);
  bool ok = (t.hi - t.lo) > 1e-9 * t.hi;
  if (reliable) *reliable = ok;
  const double vr = in.noise.sigma_rho * in.noise.sigma_rho;
  const double vt = in.noise.sigma_theta * in.noise.sigma_theta;
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  Eigen::Vector3d dr, dt;
  for (std::size_t k = 0; k < in.size(); ++k) {
    point_partials(t, in, k, dr, dt);
    cov += vr * dr * dr.transpose() + vt * dt * dt.transpose();
  }
  // Signs cancel in the outer products, so the convention flip is irrelevant
  // here; symmetrize accumulation noise away.
  cov = 0.5 * (cov + cov.transpose()).eval();
  (void)line;
  return cov;
}

Eigen::Matrix<double, 3, Eigen::Dynamic> siadat_fit_jacobian(const ImplicitLine& line,
                                                             const FitInput& in) {
  Terms t = solve(in);
  // Partials are computed for the pre-convention eigenvector; align them with
  // the sign the caller's line actually carries.
  double s = (t.a * line.a + t.b * line.b) >= 0.0 ? 1.0 : -1.0;
  const auto n = static_cast<Eigen::Index>(in.size());
  Eigen::Matrix<double, 3, Eigen::Dynamic> J(3, 2 * n);
  Eigen::Vector3d dr, dt;
  for (Eigen::Index k = 0; k < n; ++k) {
    point_partials(t, in, static_cast<std::size_t>(k), dr, dt);
    J.col(k) = s * dr;
    J.col(n + k) = s * dt;
  }
  return J;
}

}  // namespace csf
