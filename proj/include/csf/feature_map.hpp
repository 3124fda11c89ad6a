#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "csf/corners.hpp"
#include "csf/fit_arras.hpp"
#include "csf/fit_input.hpp"
#include "csf/fit_siadat.hpp"
#include "csf/fit_wclm.hpp"
#include "csf/scan.hpp"
#include "csf/segmentation.hpp"

namespace csf {

enum class Method { wclm, arras, siadat };
inline constexpr std::array<Method, 3> kAllMethods{Method::wclm, Method::arras, Method::siadat};

const char* method_name(Method m);
Method parse_method(const std::string& name);  // throws validation_error on unknown names

// Everything a full extraction run is allowed to tune. Defaults: 20 mm
// tracking threshold, 5-point minimum segment, 0.5 m corner acceptance gate,
// 1e-6 rad parallelism tolerance.
struct RunConfig {
  SegmentationConfig seg{};
  double corner_gate_m = 0.5;      // corner must land this close to both spans
  double parallel_tol_rad = 1e-6;  // angle between normals below this -> no corner
  WeightMode weights = WeightMode::noise_model;
  ArrasMode arras_mode = ArrasMode::published;
  std::optional<NoiseModel> noise_override;  // replaces the scan's recorded noise
};

// One fitted line in whichever parametrization the method produces.
struct LineFeature {
  int id = -1;
  Method method = Method::wclm;
  std::variant<InversionPointLine, PolarLine, ImplicitLine> line;

  const SegmentSpan& span() const;
  std::vector<double> params() const;       // [xq,yq] | [r,alpha] | [a,b,c]
  Eigen::MatrixXd cov() const;              // 2x2 (wclm, arras) or 3x3 (siadat)
  std::pair<double, double> polar() const;  // common (r, alpha) view of the line
};

struct FeatureMap {
  Method method = Method::wclm;
  std::size_t n_scan_points = 0;  // size of the source scan, for cross-checks
  NoiseModel noise;
  std::vector<LineFeature> lines;      // sweep order
  std::vector<CornerFeature> corners;  // sweep order; cyclic wrap pair last
  std::vector<std::string> diagnostics;  // non-fatal per-segment failures
};

// Segments the scan, fits every retained span with `method`, propagates line
// covariances, then intersects consecutive line pairs (cyclically once three
// or more lines exist). A corner is kept only if the two lines are non-parallel
// beyond parallel_tol_rad and the intersection lies within corner_gate_m of
// the nearest endpoint of each supporting span. Per-segment fit failures are
// recorded in diagnostics instead of aborting the map.
FeatureMap extract_feature_map(const PolarScan& scan, Method method, const RunConfig& config = {});

// One corner as seen by one method, in the cross-method comparison.
struct CompareEntry {
  bool present = false;
  double x = 0.0, y = 0.0;        // meters
  double sx_mm = 0.0, sy_mm = 0.0;  // 1-sigma from the corner covariance diagonal
};

struct CompareRow {
  int corner_id = -1;
  SegmentSpan span1{}, span2{};  // the supporting spans; the cross-method match key
  std::array<CompareEntry, 3> by;  // indexed by static_cast<int>(Method)
};

struct CompareReport {
  std::size_t n_scan_points = 0;
  NoiseModel noise;
  std::vector<CompareRow> rows;
  std::array<double, 3> mean_sx_mm{}, mean_sy_mm{};  // over rows where present
  std::vector<std::string> diagnostics;
};

// Runs all three methods on one scan and matches corners across methods by
// their supporting span pair (segmentation is method-independent, so matched
// corners come from identical point sets).
CompareReport compare_methods(const PolarScan& scan, const RunConfig& config = {});

}  // namespace csf
