#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "csf/feature_map.hpp"

namespace csf {

// Feature maps serialize to JSON with a fixed key order and 17-significant-
// digit numbers, so identical maps produce byte-identical files. A file holds
// either a single map (object) or several (array), e.g. one per method.
void write_feature_map(std::ostream& os, const FeatureMap& map);
void save_feature_maps(const std::string& path, const std::vector<FeatureMap>& maps);

std::vector<FeatureMap> load_feature_maps(const std::string& path);
// Requires the file to hold exactly one map (what plotting consumes).
FeatureMap load_feature_map(const std::string& path);

// Per-corner comparison table (tab-separated; positions and sigmas in mm)
// with a trailing per-method mean row.
void write_compare_report(std::ostream& os, const CompareReport& rep);
void save_compare_report(const std::string& path, const CompareReport& rep);

}  // namespace csf
