#include "csf/svg_plot.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "csf/errors.hpp"
#include "csf/format.hpp"

namespace csf {

namespace {

constexpr double kScalePxPerM = 100.0;
constexpr double kPadM = 0.5;

struct Bounds {
  double minx = 0.0, maxx = 0.0, miny = 0.0, maxy = 0.0;
  void grow(double x, double y) {
    minx = std::min(minx, x);
    maxx = std::max(maxx, x);
    miny = std::min(miny, y);
    maxy = std::max(maxy, y);
  }
};

}  // namespace

std::string render_map_svg(const PolarScan& scan, const FeatureMap& map) {
  if (map.n_scan_points != scan.points.size())
    throw validation_error("feature map was built from a " + std::to_string(map.n_scan_points) +
                           "-point scan, but this scan has " +
                           std::to_string(scan.points.size()) + " points");
  const int n = static_cast<int>(scan.points.size());
  for (const LineFeature& f : map.lines)
    if (f.span().start < 0 || f.span().end >= n)
      throw validation_error("line " + std::to_string(f.id) + " span exceeds the scan");

  std::vector<std::pair<double, double>> pts;
  pts.reserve(scan.points.size());
  Bounds b;  // origin (0,0) is always in view
  for (const PolarPoint& p : scan.points) {
    pts.push_back(polar_to_cartesian(p));
    b.grow(pts.back().first, pts.back().second);
  }
  for (const CornerFeature& c : map.corners) b.grow(c.x, c.y);

  const double w = (b.maxx - b.minx + 2 * kPadM) * kScalePxPerM;
  const double h = (b.maxy - b.miny + 2 * kPadM) * kScalePxPerM;
  auto X = [&](double x) { return (x - b.minx + kPadM) * kScalePxPerM; };
  auto Y = [&](double y) { return (b.maxy + kPadM - y) * kScalePxPerM; };  // y grows upward

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(w, 0) << "\" height=\""
     << fixed(h, 0) << "\" viewBox=\"0 0 " << fixed(w, 2) << ' ' << fixed(h, 2) << "\">\n";
  os << "<style>\n"
        ".pt{fill:#8a8a8a;}\n"
        ".wall{stroke:#1f77b4;stroke-width:3;stroke-linecap:round;}\n"
        ".corner{fill:#000000;}\n"
        ".cov{fill:none;stroke:#d62728;stroke-width:1.5;}\n"
        ".origin{stroke:#d62728;stroke-width:2;}\n"
        ".legend{font:14px sans-serif;fill:#333333;}\n"
        "</style>\n";
  os << "<rect width=\"" << fixed(w, 2) << "\" height=\"" << fixed(h, 2)
     << "\" fill=\"#ffffff\"/>\n";

  for (const auto& [px, py] : pts)
    os << "<circle class=\"pt\" cx=\"" << fixed(X(px), 2) << "\" cy=\"" << fixed(Y(py), 2)
       << "\" r=\"2\"/>\n";

  for (const LineFeature& f : map.lines) {
    // Clip the infinite fitted line to its span by projecting the span's end
    // points onto it.
    const auto [r, alpha] = f.polar();
    const double nx = std::cos(alpha), ny = std::sin(alpha);
    auto project = [&](int idx) {
      auto [px, py] = pts[idx];
      const double off = r - (px * nx + py * ny);
      return std::pair{px + off * nx, py + off * ny};
    };
    const auto [x1, y1] = project(f.span().start);
    const auto [x2, y2] = project(f.span().end);
    os << "<line class=\"wall\" x1=\"" << fixed(X(x1), 2) << "\" y1=\"" << fixed(Y(y1), 2)
       << "\" x2=\"" << fixed(X(x2), 2) << "\" y2=\"" << fixed(Y(y2), 2) << "\"/>\n";
  }

  for (const CornerFeature& c : map.corners) {
    const double cx = X(c.x), cy = Y(c.y);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(c.cov);
    const double lo = std::max(0.0, eig.eigenvalues()(0));
    const double hi = std::max(0.0, eig.eigenvalues()(1));
    const Eigen::Vector2d major = eig.eigenvectors().col(1);
    // SVG y points down, so a world-frame rotation appears negated.
    const double deg = -std::atan2(major.y(), major.x()) * 180.0 / std::numbers::pi;
    os << "<ellipse class=\"cov\" cx=\"" << fixed(cx, 2) << "\" cy=\"" << fixed(cy, 2)
       << "\" rx=\"" << fixed(3.0 * std::sqrt(hi) * kScalePxPerM, 2) << "\" ry=\""
       << fixed(3.0 * std::sqrt(lo) * kScalePxPerM, 2) << "\" transform=\"rotate("
       << fixed(deg, 2) << ' ' << fixed(cx, 2) << ' ' << fixed(cy, 2) << ")\"/>\n";
    os << "<path class=\"corner\" d=\"M " << fixed(cx, 2) << ' ' << fixed(cy - 7, 2) << " L "
       << fixed(cx + 6, 2) << ' ' << fixed(cy + 4, 2) << " L " << fixed(cx - 6, 2) << ' '
       << fixed(cy + 4, 2) << " Z\"/>\n";
  }

  const double ox = X(0.0), oy = Y(0.0);
  os << "<path class=\"origin\" d=\"M " << fixed(ox - 9, 2) << ' ' << fixed(oy, 2) << " H "
     << fixed(ox + 9, 2) << " M " << fixed(ox, 2) << ' ' << fixed(oy - 9, 2) << " V "
     << fixed(oy + 9, 2) << "\"/>\n";

  os << "<text class=\"legend\" x=\"12\" y=\"20\">" << method_name(map.method) << ": "
     << map.lines.size() << " lines, " << map.corners.size() << " corners</text>\n";
  os << "<text class=\"legend\" x=\"12\" y=\"38\">ellipses: 3-sigma Mahalanobis contour of the "
        "corner covariance</text>\n";
  os << "<text class=\"legend\" x=\"12\" y=\"56\">cross: sensor origin</text>\n";
  os << "</svg>\n";
  return os.str();
}

void save_map_svg(const std::string& path, const PolarScan& scan, const FeatureMap& map) {
  const std::string svg = render_map_svg(scan, map);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw io_error("cannot open for writing: " + path);
  file << svg;
  if (!file.flush()) throw io_error("write failed: " + path);
}

}  // namespace csf
