// Python bindings for the scan -> lines -> corners pipeline. Covariances
// cross the boundary as numpy arrays; everything else as plain structs,
// lists and dicts.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <utility>
#include <vector>

#include "csf/bench.hpp"
#include "csf/errors.hpp"
#include "csf/feature_io.hpp"
#include "csf/feature_map.hpp"
#include "csf/scan_io.hpp"
#include "csf/svg_plot.hpp"
#include "csf/world.hpp"

namespace py = pybind11;
using namespace csf;

namespace {

RunConfig make_config(double threshold_m, int min_points, double corner_gate_m) {
  RunConfig cfg;
  cfg.seg.threshold_m = threshold_m;
  cfg.seg.min_points = min_points;
  cfg.corner_gate_m = corner_gate_m;
  return cfg;
}

py::dict line_to_dict(const LineFeature& f) {
  py::dict d;
  d["id"] = f.id;
  d["method"] = method_name(f.method);
  d["span"] = py::make_tuple(f.span().start, f.span().end);
  d["params"] = f.params();
  d["cov"] = Eigen::MatrixXd(f.cov());
  const auto [r, alpha] = f.polar();
  d["r"] = r;
  d["alpha"] = alpha;
  return d;
}

py::dict corner_to_dict(const CornerFeature& c) {
  py::dict d;
  d["x"] = c.x;
  d["y"] = c.y;
  d["cov"] = Eigen::Matrix2d(c.cov);
  d["lines"] = py::make_tuple(c.line1, c.line2);
  return d;
}

}  // namespace

PYBIND11_MODULE(_csf, m) {
  m.doc() = "2D range-scan line/corner feature extraction with uncertainty propagation";

  py::register_exception<validation_error>(m, "ValidationError");
  py::register_exception<geometry_error>(m, "GeometryError");
  py::register_exception<io_error>(m, "IOError");

  py::class_<NoiseModel>(m, "NoiseModel")
      .def(py::init<>())
      .def(py::init<double, double>(), py::arg("sigma_rho"), py::arg("sigma_theta"))
      .def_readwrite("sigma_rho", &NoiseModel::sigma_rho)
      .def_readwrite("sigma_theta", &NoiseModel::sigma_theta);

  py::class_<PolarPoint>(m, "PolarPoint")
      .def(py::init<double, double>(), py::arg("rho"), py::arg("theta"))
      .def_readwrite("rho", &PolarPoint::rho)
      .def_readwrite("theta", &PolarPoint::theta);

  py::class_<PolarScan>(m, "PolarScan")
      .def(py::init<>())
      .def_readwrite("points", &PolarScan::points)
      .def_readwrite("noise", &PolarScan::noise)
      .def("__len__", [](const PolarScan& s) { return s.points.size(); });

  py::class_<Pose>(m, "Pose")
      .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"),
           py::arg("heading_rad"))
      .def_readwrite("x", &Pose::x)
      .def_readwrite("y", &Pose::y)
      .def_readwrite("heading", &Pose::heading);

  py::class_<WorldModel>(m, "WorldModel")
      .def("__len__", [](const WorldModel& w) { return w.segments.size(); });

  py::class_<FeatureMap>(m, "FeatureMap")
      .def_property_readonly("method",
                             [](const FeatureMap& fm) { return method_name(fm.method); })
      .def_readonly("n_scan_points", &FeatureMap::n_scan_points)
      .def_readonly("diagnostics", &FeatureMap::diagnostics)
      .def_property_readonly("lines",
                             [](const FeatureMap& fm) {
                               py::list out;
                               for (const LineFeature& f : fm.lines) out.append(line_to_dict(f));
                               return out;
                             })
      .def_property_readonly("corners", [](const FeatureMap& fm) {
        py::list out;
        for (const CornerFeature& c : fm.corners) out.append(corner_to_dict(c));
        return out;
      });

  m.def(
      "make_world",
      [](const std::vector<std::array<double, 4>>& walls) {
        WorldModel w;
        for (const auto& s : walls) w.segments.push_back({s[0], s[1], s[2], s[3]});
        validate(w);
        return w;
      },
      py::arg("walls"), "Build a world from (x1, y1, x2, y2) wall tuples (meters)");
  m.def("load_world", &load_world, py::arg("path"));
  m.def("load_scan", &load_scan, py::arg("path"));
  m.def("save_scan", &save_scan, py::arg("scan"), py::arg("path"));

  m.def("cast_scan", &cast_scan, py::arg("world"), py::arg("pose"), py::arg("n_rays"),
        py::arg("noise") = NoiseModel{}, py::arg("seed") = 12345,
        "Cast n_rays bearings from the pose; misses omitted, noise per the model");

  m.def(
      "extract",
      [](const PolarScan& scan, const std::string& method, double threshold_m, int min_points,
         double corner_gate_m) {
        return extract_feature_map(scan, parse_method(method),
                                   make_config(threshold_m, min_points, corner_gate_m));
      },
      py::arg("scan"), py::arg("method") = "wclm", py::arg("threshold_m") = 0.02,
      py::arg("min_points") = 5, py::arg("corner_gate_m") = 0.5,
      "Segment the scan, fit each span, intersect consecutive lines into corners");

  m.def(
      "fit_line",
      [](const std::vector<std::pair<double, double>>& polar, const std::string& method,
         double sigma_rho, double sigma_theta, bool unit_weights) {
        std::vector<PolarPoint> pts;
        pts.reserve(polar.size());
        for (const auto& [rho, theta] : polar) pts.push_back({rho, theta});
        const FitInput in =
            make_fit_input(pts, NoiseModel{sigma_rho, sigma_theta},
                           unit_weights ? WeightMode::unit : WeightMode::noise_model);
        LineFeature f;
        f.method = parse_method(method);
        switch (f.method) {
          case Method::wclm: {
            InversionPointLine l = fit_line_wclm(in);
            l.cov = wclm_line_covariance(l, in);
            f.line = l;
            break;
          }
          case Method::arras: {
            PolarLine l = fit_line_arras(in);
            l.cov = arras_line_covariance(l, in);
            f.line = l;
            break;
          }
          case Method::siadat: {
            ImplicitLine l = fit_line_siadat(in);
            l.cov = siadat_line_covariance(l, in);
            f.line = l;
            break;
          }
        }
        return line_to_dict(f);
      },
      py::arg("points"), py::arg("method") = "wclm", py::arg("sigma_rho") = 0.05,
      py::arg("sigma_theta") = 0.0034121, py::arg("unit_weights") = false,
      "Fit one line to (rho, theta) points; returns params, covariance and the "
      "(r, alpha) view");

  m.def(
      "render_svg",
      [](const PolarScan& scan, const FeatureMap& map) { return render_map_svg(scan, map); },
      py::arg("scan"), py::arg("map"));
}
