#include "csf/corners.hpp"

#include <cmath>
#include <tuple>

#include "csf/errors.hpp"

namespace csf {

namespace {

// Corner position and covariance must not depend on argument order (bit-exact
// swap invariance), so every entry point sorts its two lines by a stable key
// before any arithmetic.
template <class L, class Key>
std::pair<const L*, const L*> canonical(const L& l1, const L& l2, Key key) {
  return key(l2) < key(l1) ? std::pair{&l2, &l1} : std::pair{&l1, &l2};
}

auto wclm_key = [](const InversionPointLine& l) {
  return std::make_tuple(l.support.start, l.support.end, l.xq, l.yq);
};
auto arras_key = [](const PolarLine& l) {
  return std::make_tuple(l.support.start, l.support.end, l.r, l.alpha);
};
auto siadat_key = [](const ImplicitLine& l) {
  return std::make_tuple(l.support.start, l.support.end, l.a, l.b, l.c);
};

}  // namespace

CornerFeature corner_wclm(const InversionPointLine& l1, const InversionPointLine& l2) {
  auto [a, b] = canonical(l1, l2, wclm_key);
  const double x1 = a->xq, y1 = a->yq, x2 = b->xq, y2 = b->yq;
  const double det = y1 * x2 - x1 * y2;
  const double scale = std::hypot(x1, y1) * std::hypot(x2, y2);
  if (!(std::fabs(det) > 1e-12 * scale))
    throw geometry_error("parallel constraint lines: no corner");
  CornerFeature c;
  c.x = (y1 - y2) / det;
  c.y = (x1 - x2) / det;
  return c;
}

Eigen::Matrix2d corner_wclm_covariance(const CornerFeature& c, const InversionPointLine& l1,
                                       const InversionPointLine& l2) {
  auto [pa, pb] = canonical(l1, l2, wclm_key);
  const double x1 = pa->xq, y1 = pa->yq, x2 = pb->xq, y2 = pb->yq;
  const double det = y1 * x2 - x1 * y2;
  // d(det) along (x1, y1, x2, y2)
  const double ddet[4] = {-y2, x2, y1, -x1};
  // numerators: nx = y1 - y2, ny = x1 - x2
  const double dnx[4] = {0.0, 1.0, 0.0, -1.0};
  const double dny[4] = {1.0, 0.0, -1.0, 0.0};
  Eigen::Matrix<double, 2, 4> J;
  for (int p = 0; p < 4; ++p) {
    J(0, p) = (dnx[p] - c.x * ddet[p]) / det;
    J(1, p) = (dny[p] - c.y * ddet[p]) / det;
  }
  Eigen::Matrix4d block = Eigen::Matrix4d::Zero();
  block.topLeftCorner<2, 2>() = pa->cov;
  block.bottomRightCorner<2, 2>() = pb->cov;
  Eigen::Matrix2d cov = J * block * J.transpose();
  cov(0, 1) = cov(1, 0) = 0.5 * (cov(0, 1) + cov(1, 0));
  return cov;
}

CornerFeature corner_arras(const PolarLine& l1, const PolarLine& l2) {
  auto [a, b] = canonical(l1, l2, arras_key);
  const double s21 = std::sin(b->alpha - a->alpha);
  if (!(std::fabs(s21) > 1e-6)) throw geometry_error("near-parallel lines: no corner");
  CornerFeature c;
  c.x = (a->r * std::sin(b->alpha) - b->r * std::sin(a->alpha)) / s21;
  c.y = (b->r * std::cos(a->alpha) - a->r * std::cos(b->alpha)) / s21;
  return c;
}

Eigen::Matrix2d corner_arras_covariance(const CornerFeature& c, const PolarLine& l1,
                                        const PolarLine& l2) {
  auto [pa, pb] = canonical(l1, l2, arras_key);
  const double r1 = pa->r, a1 = pa->alpha, r2 = pb->r, a2 = pb->alpha;
  const double s1 = std::sin(a1), c1 = std::cos(a1), s2 = std::sin(a2), c2 = std::cos(a2);
  const double s21 = std::sin(a2 - a1), c21 = std::cos(a2 - a1);
  // x = (r1 s2 - r2 s1)/s21, y = (r2 c1 - r1 c2)/s21;
  // ds21/da1 = -c21, ds21/da2 = +c21.
  Eigen::Matrix<double, 2, 4> J;  // columns: r1, a1, r2, a2
  J(0, 0) = s2 / s21;
  J(0, 1) = (-r2 * c1 + c.x * c21) / s21;
  J(0, 2) = -s1 / s21;
  J(0, 3) = (r1 * c2 - c.x * c21) / s21;
  J(1, 0) = -c2 / s21;
  J(1, 1) = (-r2 * s1 + c.y * c21) / s21;
  J(1, 2) = c1 / s21;
  J(1, 3) = (r1 * s2 - c.y * c21) / s21;
  Eigen::Matrix4d block = Eigen::Matrix4d::Zero();
  block.topLeftCorner<2, 2>() = pa->cov;
  block.bottomRightCorner<2, 2>() = pb->cov;
  Eigen::Matrix2d cov = J * block * J.transpose();
  cov(0, 1) = cov(1, 0) = 0.5 * (cov(0, 1) + cov(1, 0));
  return cov;
}

CornerFeature corner_siadat(const ImplicitLine& l1, const ImplicitLine& l2) {
  auto [p, q] = canonical(l1, l2, siadat_key);
  const double delta = p->a * q->b - q->a * p->b;
  if (!(std::fabs(delta) > 1e-12)) throw geometry_error("parallel implicit lines: no corner");
  CornerFeature c;
  c.x = (p->b * q->c - q->b * p->c) / delta;
  c.y = (q->a * p->c - p->a * q->c) / delta;
  return c;
}

Eigen::Matrix2d corner_siadat_covariance(const CornerFeature& c, const ImplicitLine& l1,
                                         const ImplicitLine& l2) {
  auto [p, q] = canonical(l1, l2, siadat_key);
  const double a1 = p->a, b1 = p->b, c1 = p->c, a2 = q->a, b2 = q->b, c2 = q->c;
  const double delta = a1 * b2 - a2 * b1;
  // nx = b1 c2 - b2 c1, ny = a2 c1 - a1 c2
  const double ddelta[6] = {b2, -a2, 0.0, -b1, a1, 0.0};  // d/d(a1,b1,c1,a2,b2,c2)
  const double dnx[6] = {0.0, c2, -b2, 0.0, -c1, b1};
  const double dny[6] = {-c2, 0.0, a2, c1, 0.0, -a1};
  Eigen::Matrix<double, 2, 6> J;
  for (int k = 0; k < 6; ++k) {
    J(0, k) = (dnx[k] - c.x * ddelta[k]) / delta;
    J(1, k) = (dny[k] - c.y * ddelta[k]) / delta;
  }
  Eigen::Matrix<double, 6, 6> block = Eigen::Matrix<double, 6, 6>::Zero();
  block.topLeftCorner<3, 3>() = p->cov;
  block.bottomRightCorner<3, 3>() = q->cov;
  Eigen::Matrix2d cov = J * block * J.transpose();
  cov(0, 1) = cov(1, 0) = 0.5 * (cov(0, 1) + cov(1, 0));
  return cov;
}

}  // namespace csf
