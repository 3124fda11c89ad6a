#include "csf/fit_arras.hpp"

#include <cmath>

#include "csf/errors.hpp"

namespace csf {

namespace {

// Shared O(n) moments. a_i = w_i x_i and b_i = w_i y_i are the single-sum
// factors of the published double sums.
struct Moments {
  double sw = 0, sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
};

Moments accumulate(const FitInput& in) {
  long double sw = 0, sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    long double w = in.w[i], x = in.xs[i], y = in.ys[i];
    sw += w;
    sx += w * x;
    sy += w * y;
    sxx += w * x * x;
    syy += w * y * y;
    sxy += w * x * y;
  }
  return {static_cast<double>(sw), static_cast<double>(sx), static_cast<double>(sy),
          static_cast<double>(sxx), static_cast<double>(syy), static_cast<double>(sxy)};
}

struct FitTerms {
  Moments m;
  double num = 0, den = 0;  // atan2 arguments for 2 alpha
  double r = 0, alpha = 0;
};

FitTerms fit_terms(const FitInput& in, ArrasMode mode) {
  FitTerms t;
  t.m = accumulate(in);
  const Moments& m = t.m;

  if (mode == ArrasMode::published) {
    // Literal double summations, as the method is usually stated.
    const std::size_t n = in.size();
    long double ds1 = 0, ds2 = 0, ss1 = 0, ss2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double wri = in.w[i] * in.polar[i].rho;
      const double ci = std::cos(in.polar[i].theta), si = std::sin(in.polar[i].theta);
      ss1 += wri * in.polar[i].rho * 2.0 * si * ci;        // w rho^2 sin 2t
      ss2 += wri * in.polar[i].rho * (ci * ci - si * si);  // w rho^2 cos 2t
      for (std::size_t j = 0; j < n; ++j) {
        const double wrj = in.w[j] * in.polar[j].rho;
        const double cj = std::cos(in.polar[j].theta), sj = std::sin(in.polar[j].theta);
        ds1 += wri * wrj * ci * sj;
        ds2 += wri * wrj * (ci * cj - si * sj);
      }
    }
    t.num = static_cast<double>((2.0L / m.sw) * ds1 - ss1);
    t.den = static_cast<double>((1.0L / m.sw) * ds2 - ss2);
  } else {
    // Same quantities via moments: the double sums factor into Sx Sy and
    // Sx^2 - Sy^2; the single sums are 2 Sxy and Sxx - Syy.
    t.num = 2.0 * (m.sx * m.sy / m.sw - m.sxy);
    t.den = (m.sx * m.sx - m.sy * m.sy) / m.sw - (m.sxx - m.syy);
  }

  double scale = m.sxx + m.syy;  // = sum w rho^2
  if (std::hypot(t.num, t.den) <= 1e-12 * scale)
    throw geometry_error("degenerate fit: isotropic or coincident points have no line direction");

  t.alpha = 0.5 * std::atan2(t.num, t.den);
  t.r = (m.sx * std::cos(t.alpha) + m.sy * std::sin(t.alpha)) / m.sw;
  if (t.r < 0.0) {
    t.r = -t.r;
    t.alpha = normalize_angle(t.alpha + M_PI);
  } else {
    t.alpha = normalize_angle(t.alpha);
  }
  return t;
}

// Partials of (r, alpha) along rho_k and theta_k. In published mode the
// double-sum partials need SUM_j w_j x_j and SUM_j w_j y_j per point;
// they are re-evaluated here each time so the covariance cost stays
// quadratic like the published fit. Factored mode reads them off the moments.
void point_partials(const FitTerms& t, const FitInput& in, ArrasMode mode, std::size_t k,
                    Eigen::Vector2d& d_rho, Eigen::Vector2d& d_theta) {
  const Moments& m = t.m;
  const double ca = std::cos(t.alpha), sa = std::sin(t.alpha);
  const double n2d2 = t.num * t.num + t.den * t.den;

  double sx = m.sx, sy = m.sy;
  if (mode == ArrasMode::published) {
    long double sa_j = 0, sb_j = 0;
    for (std::size_t j = 0; j < in.size(); ++j) {
      sa_j += in.w[j] * in.xs[j];
      sb_j += in.w[j] * in.ys[j];
    }
    sx = static_cast<double>(sa_j);
    sy = static_cast<double>(sb_j);
  }

  const double w = in.w[k], x = in.xs[k], y = in.ys[k];
  const double ct = std::cos(in.polar[k].theta), st = std::sin(in.polar[k].theta);
  const double dw = in.weight_drho(k);

  auto assemble = [&](double dsw, double dsx, double dsy, double dsxx, double dsyy, double dsxy) {
    // num = 2(Sx Sy / Sw - Sxy); den = (Sx^2 - Sy^2)/Sw - (Sxx - Syy)
    double dnum =
        2.0 * ((dsx * sy + sx * dsy) / m.sw - sx * sy * dsw / (m.sw * m.sw) - dsxy);
    double dden = (2.0 * sx * dsx - 2.0 * sy * dsy) / m.sw -
                  (sx * sx - sy * sy) * dsw / (m.sw * m.sw) - (dsxx - dsyy);
    double dalpha = 0.5 * (t.den * dnum - t.num * dden) / n2d2;
    double dr = (dsx * ca + dsy * sa - t.r * dsw) / m.sw +
                ((m.sy * ca - m.sx * sa) / m.sw) * dalpha;
    return Eigen::Vector2d(dr, dalpha);
  };

  d_rho = assemble(dw, dw * x + w * ct, dw * y + w * st, dw * x * x + 2.0 * w * x * ct,
                   dw * y * y + 2.0 * w * y * st, dw * x * y + w * (ct * y + x * st));
  d_theta = assemble(0.0, -w * y, w * x, -2.0 * w * x * y, 2.0 * w * x * y, w * (x * x - y * y));
}

}  // namespace

PolarLine fit_line_arras(const FitInput& in, ArrasMode mode) {
  validate(in);
  FitTerms t = fit_terms(in, mode);
  PolarLine line;
  line.r = t.r;
  line.alpha = t.alpha;
  line.support = in.span;
  return line;
}

Eigen::Matrix2d arras_line_covariance(const PolarLine& line, const FitInput& in, ArrasMode mode) {
  FitTerms t = fit_terms(in, mode);
  t.r = line.r;
  t.alpha = line.alpha;
  const double vr = in.noise.sigma_rho * in.noise.sigma_rho;
  const double vt = in.noise.sigma_theta * in.noise.sigma_theta;
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  Eigen::Vector2d dr, dt;
  for (std::size_t k = 0; k < in.size(); ++k) {
    point_partials(t, in, mode, k, dr, dt);
    cov += vr * dr * dr.transpose() + vt * dt * dt.transpose();
  }
  cov(0, 1) = cov(1, 0) = 0.5 * (cov(0, 1) + cov(1, 0));
  return cov;
}

Eigen::Matrix<double, 2, Eigen::Dynamic> arras_fit_jacobian(const PolarLine& line,
                                                            const FitInput& in, ArrasMode mode) {
  FitTerms t = fit_terms(in, mode);
  t.r = line.r;
  t.alpha = line.alpha;
  const auto n = static_cast<Eigen::Index>(in.size());
  Eigen::Matrix<double, 2, Eigen::Dynamic> J(2, 2 * n);
  Eigen::Vector2d dr, dt;
  for (Eigen::Index k = 0; k < n; ++k) {
    point_partials(t, in, mode, static_cast<std::size_t>(k), dr, dt);
    J.col(k) = dr;
    J.col(n + k) = dt;
  }
  return J;
}

}  // namespace csf
