#pragma once

#include <string>

#include "csf/feature_map.hpp"
#include "csf/scan.hpp"

namespace csf {

// Standalone SVG of a scan and its feature map: scan points as dots, fitted
// lines as strokes clipped to their support spans, corners as filled triangles
// with 3-sigma covariance ellipses (Mahalanobis contour, eigendecomposition),
// and the sensor origin as a cross. Byte-deterministic for fixed inputs.
// Throws validation_error when the map was built from a different scan
// (point-count mismatch or span out of range).
std::string render_map_svg(const PolarScan& scan, const FeatureMap& map);

void save_map_svg(const std::string& path, const PolarScan& scan, const FeatureMap& map);

}  // namespace csf
