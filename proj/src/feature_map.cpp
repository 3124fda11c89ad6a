#include "csf/feature_map.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

#include "csf/errors.hpp"

namespace csf {

const char* method_name(Method m) {
  switch (m) {
    case Method::wclm: return "wclm";
    case Method::arras: return "arras";
    case Method::siadat: return "siadat";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  for (Method m : kAllMethods)
    if (name == method_name(m)) return m;
  throw validation_error("unknown method '" + name + "' (expected wclm, arras or siadat)");
}

const SegmentSpan& LineFeature::span() const {
  return std::visit([](const auto& l) -> const SegmentSpan& { return l.support; }, line);
}

std::vector<double> LineFeature::params() const {
  switch (method) {
    case Method::wclm: {
      const auto& l = std::get<InversionPointLine>(line);
      return {l.xq, l.yq};
    }
    case Method::arras: {
      const auto& l = std::get<PolarLine>(line);
      return {l.r, l.alpha};
    }
    case Method::siadat: {
      const auto& l = std::get<ImplicitLine>(line);
      return {l.a, l.b, l.c};
    }
  }
  return {};
}

Eigen::MatrixXd LineFeature::cov() const {
  switch (method) {
    case Method::wclm: return std::get<InversionPointLine>(line).cov;
    case Method::arras: return std::get<PolarLine>(line).cov;
    case Method::siadat: return std::get<ImplicitLine>(line).cov;
  }
  return {};
}

std::pair<double, double> LineFeature::polar() const {
  switch (method) {
    case Method::wclm: return inversion_line_to_polar(std::get<InversionPointLine>(line));
    case Method::arras: {
      const auto& l = std::get<PolarLine>(line);
      return {l.r, l.alpha};
    }
    case Method::siadat: {
      // c <= 0 convention puts the foot of the perpendicular at -c along (a, b).
      const auto& l = std::get<ImplicitLine>(line);
      return {-l.c, std::atan2(l.b, l.a)};
    }
  }
  return {0.0, 0.0};
}

namespace {

std::string span_label(const SegmentSpan& s) {
  return "segment [" + std::to_string(s.start) + ".." + std::to_string(s.end) + "]";
}

LineFeature fit_span(const PolarScan& scan, const SegmentSpan& span, Method method,
                     const RunConfig& config, std::vector<std::string>& diagnostics) {
  FitInput in = make_fit_input(scan, span, config.weights);
  LineFeature f;
  f.method = method;
  switch (method) {
    case Method::wclm: {
      InversionPointLine l = fit_line_wclm(in);
      l.cov = wclm_line_covariance(l, in);
      f.line = l;
      break;
    }
    case Method::arras: {
      PolarLine l = fit_line_arras(in, config.arras_mode);
      l.cov = arras_line_covariance(l, in, config.arras_mode);
      f.line = l;
      break;
    }
    case Method::siadat: {
      ImplicitLine l = fit_line_siadat(in);
      bool reliable = true;
      l.cov = siadat_line_covariance(l, in, &reliable);
      l.cov_reliable = reliable;
      if (!reliable)
        diagnostics.push_back(span_label(span) +
                              ": covariance unreliable (near-isotropic point scatter)");
      f.line = l;
      break;
    }
  }
  return f;
}

CornerFeature intersect(const LineFeature& f1, const LineFeature& f2) {
  switch (f1.method) {
    case Method::wclm: {
      const auto& l1 = std::get<InversionPointLine>(f1.line);
      const auto& l2 = std::get<InversionPointLine>(f2.line);
      CornerFeature c = corner_wclm(l1, l2);
      c.cov = corner_wclm_covariance(c, l1, l2);
      return c;
    }
    case Method::arras: {
      const auto& l1 = std::get<PolarLine>(f1.line);
      const auto& l2 = std::get<PolarLine>(f2.line);
      CornerFeature c = corner_arras(l1, l2);
      c.cov = corner_arras_covariance(c, l1, l2);
      return c;
    }
    case Method::siadat: {
      const auto& l1 = std::get<ImplicitLine>(f1.line);
      const auto& l2 = std::get<ImplicitLine>(f2.line);
      CornerFeature c = corner_siadat(l1, l2);
      c.cov = corner_siadat_covariance(c, l1, l2);
      return c;
    }
  }
  throw geometry_error("unreachable");
}

}  // namespace

FeatureMap extract_feature_map(const PolarScan& scan, Method method, const RunConfig& config) {
  validate(scan);
  const PolarScan* src = &scan;
  PolarScan overridden;
  if (config.noise_override) {
    validate(*config.noise_override);
    overridden = scan;
    overridden.noise = *config.noise_override;
    src = &overridden;
  }

  FeatureMap map;
  map.method = method;
  map.n_scan_points = src->points.size();
  map.noise = src->noise;

  for (const SegmentSpan& span : segment_scan(*src, config.seg)) {
    try {
      LineFeature f = fit_span(*src, span, method, config, map.diagnostics);
      f.id = static_cast<int>(map.lines.size());
      map.lines.push_back(std::move(f));
    } catch (const toolkit_error& e) {
      map.diagnostics.push_back(span_label(span) + ": " + e.what());
    }
  }

  auto near_span_end = [&](const SegmentSpan& s, double cx, double cy) {
    auto [x1, y1] = polar_to_cartesian(src->points[s.start]);
    auto [x2, y2] = polar_to_cartesian(src->points[s.end]);
    const double d = std::min(std::hypot(cx - x1, cy - y1), std::hypot(cx - x2, cy - y2));
    return d <= config.corner_gate_m;
  };

  auto try_corner = [&](const LineFeature& f1, const LineFeature& f2) {
    const double a1 = f1.polar().second, a2 = f2.polar().second;
    const double d = std::fabs(normalize_angle(a2 - a1));
    if (std::min(d, std::numbers::pi - d) <= config.parallel_tol_rad) return;  // collinear walls
    CornerFeature c;
    try {
      c = intersect(f1, f2);
    } catch (const geometry_error&) {
      return;  // numerically parallel beyond the angle pre-check
    }
    // Gate: a genuine corner sits at the junction of its two spans; far-away
    // intersections (e.g. the wrap pair of one long wall) are discarded.
    if (!near_span_end(f1.span(), c.x, c.y) || !near_span_end(f2.span(), c.x, c.y)) return;
    c.line1 = f1.id;
    c.line2 = f2.id;
    map.corners.push_back(std::move(c));
  };

  const std::size_t nl = map.lines.size();
  for (std::size_t i = 0; i + 1 < nl; ++i) try_corner(map.lines[i], map.lines[i + 1]);
  if (nl >= 3) try_corner(map.lines[nl - 1], map.lines[0]);  // sweep wrap
  return map;
}

CompareReport compare_methods(const PolarScan& scan, const RunConfig& config) {
  CompareReport rep;
  std::map<std::tuple<int, int, int, int>, std::size_t> row_of;
  for (Method m : kAllMethods) {
    FeatureMap fm = extract_feature_map(scan, m, config);
    if (m == Method::wclm) {
      rep.n_scan_points = fm.n_scan_points;
      rep.noise = fm.noise;
    }
    for (const std::string& d : fm.diagnostics)
      rep.diagnostics.push_back(std::string(method_name(m)) + ": " + d);
    for (const CornerFeature& c : fm.corners) {
      const SegmentSpan& s1 = fm.lines[c.line1].span();
      const SegmentSpan& s2 = fm.lines[c.line2].span();
      const auto key = std::make_tuple(s1.start, s1.end, s2.start, s2.end);
      auto [it, inserted] = row_of.try_emplace(key, rep.rows.size());
      if (inserted) {
        CompareRow row;
        row.corner_id = static_cast<int>(rep.rows.size());
        row.span1 = s1;
        row.span2 = s2;
        rep.rows.push_back(row);
      }
      CompareEntry& e = rep.rows[it->second].by[static_cast<int>(m)];
      e.present = true;
      e.x = c.x;
      e.y = c.y;
      e.sx_mm = std::sqrt(std::max(0.0, c.cov(0, 0))) * 1e3;
      e.sy_mm = std::sqrt(std::max(0.0, c.cov(1, 1))) * 1e3;
    }
  }
  for (Method m : kAllMethods) {
    const int mi = static_cast<int>(m);
    double sx = 0.0, sy = 0.0;
    std::size_t n = 0;
    for (const CompareRow& row : rep.rows) {
      if (!row.by[mi].present) continue;
      sx += row.by[mi].sx_mm;
      sy += row.by[mi].sy_mm;
      ++n;
    }
    rep.mean_sx_mm[mi] = n ? sx / n : 0.0;
    rep.mean_sy_mm[mi] = n ? sy / n : 0.0;
  }
  return rep;
}

}  // namespace csf
