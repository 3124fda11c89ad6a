#include "csf/feature_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "csf/errors.hpp"
#include "csf/format.hpp"

namespace csf {

namespace {

void write_matrix(std::ostream& os, const Eigen::MatrixXd& m) {
  os << '[';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r) os << ", ";
    os << '[';
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) os << ", ";
      os << g17(m(r, c));
    }
    os << ']';
  }
  os << ']';
}

void write_string(std::ostream& os, const std::string& s) {
  os << '"';
  for (char ch : s) {
    switch (ch) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      case '\t': os << "\\t"; break;
      default: os << ch;
    }
  }
  os << '"';
}

}  // namespace

void write_feature_map(std::ostream& os, const FeatureMap& map) {
  os << "{\n";
  os << "  \"method\": \"" << method_name(map.method) << "\",\n";
  os << "  \"n_scan_points\": " << map.n_scan_points << ",\n";
  os << "  \"noise\": {\"sigma_rho_m\": " << g17(map.noise.sigma_rho)
     << ", \"sigma_theta_rad\": " << g17(map.noise.sigma_theta) << "},\n";

  os << "  \"lines\": [";
  for (std::size_t i = 0; i < map.lines.size(); ++i) {
    const LineFeature& f = map.lines[i];
    os << (i ? ",\n    " : "\n    ");
    os << "{\"id\": " << f.id << ", \"method\": \"" << method_name(f.method) << "\", \"span\": ["
       << f.span().start << ", " << f.span().end << "], \"params\": [";
    const std::vector<double> p = f.params();
    for (std::size_t k = 0; k < p.size(); ++k) os << (k ? ", " : "") << g17(p[k]);
    os << "], \"cov\": ";
    write_matrix(os, f.cov());
    os << '}';
  }
  os << (map.lines.empty() ? "],\n" : "\n  ],\n");

  os << "  \"corners\": [";
  for (std::size_t i = 0; i < map.corners.size(); ++i) {
    const CornerFeature& c = map.corners[i];
    os << (i ? ",\n    " : "\n    ");
    os << "{\"id\": " << i << ", \"x\": " << g17(c.x) << ", \"y\": " << g17(c.y) << ", \"cov\": ";
    write_matrix(os, c.cov);
    os << ", \"lines\": [" << c.line1 << ", " << c.line2 << "]}";
  }
  os << (map.corners.empty() ? "],\n" : "\n  ],\n");

  os << "  \"diagnostics\": [";
  for (std::size_t i = 0; i < map.diagnostics.size(); ++i) {
    os << (i ? ", " : "");
    write_string(os, map.diagnostics[i]);
  }
  os << "]\n}";
}

void save_feature_maps(const std::string& path, const std::vector<FeatureMap>& maps) {
  std::ostringstream out;
  if (maps.size() == 1) {
    write_feature_map(out, maps.front());
  } else {
    out << "[\n";
    for (std::size_t i = 0; i < maps.size(); ++i) {
      if (i) out << ",\n";
      write_feature_map(out, maps[i]);
    }
    out << "\n]";
  }
  out << '\n';
  std::ofstream file(path, std::ios::binary);
  if (!file) throw io_error("cannot open for writing: " + path);
  file << out.str();
  if (!file.flush()) throw io_error("write failed: " + path);
}

namespace {

using nlohmann::json;

Eigen::MatrixXd read_matrix(const json& j, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw validation_error(where + ": expected " + std::to_string(dim) + "x" +
                           std::to_string(dim) + " covariance");
  Eigen::MatrixXd m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = j.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw validation_error(where + ": covariance row " + std::to_string(r) + " malformed");
    for (int c = 0; c < dim; ++c) m(r, c) = row.at(c).get<double>();
  }
  return m;
}

SegmentSpan read_span(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    throw validation_error(where + ": span must be [start, end]");
  SegmentSpan s{j.at(0).get<int>(), j.at(1).get<int>()};
  if (s.start < 0 || s.end < s.start)
    throw validation_error(where + ": span [" + std::to_string(s.start) + ", " +
                           std::to_string(s.end) + "] is not a forward range");
  return s;
}

FeatureMap map_from_json(const json& j) {
  FeatureMap map;
  map.method = parse_method(j.at("method").get<std::string>());
  map.n_scan_points = j.at("n_scan_points").get<std::size_t>();
  const json& noise = j.at("noise");
  map.noise.sigma_rho = noise.at("sigma_rho_m").get<double>();
  map.noise.sigma_theta = noise.at("sigma_theta_rad").get<double>();

  for (const json& jl : j.at("lines")) {
    const std::string where = "line " + std::to_string(map.lines.size());
    LineFeature f;
    f.id = jl.at("id").get<int>();
    f.method = parse_method(jl.at("method").get<std::string>());
    if (f.method != map.method)
      throw validation_error(where + ": method differs from the map's method");
    const SegmentSpan span = read_span(jl.at("span"), where);
    const json& jp = jl.at("params");
    const std::size_t want = f.method == Method::siadat ? 3 : 2;
    if (!jp.is_array() || jp.size() != want)
      throw validation_error(where + ": expected " + std::to_string(want) + " params");
    switch (f.method) {
      case Method::wclm: {
        InversionPointLine l;
        l.xq = jp.at(0).get<double>();
        l.yq = jp.at(1).get<double>();
        l.cov = read_matrix(jl.at("cov"), 2, where);
        l.support = span;
        f.line = l;
        break;
      }
      case Method::arras: {
        PolarLine l;
        l.r = jp.at(0).get<double>();
        l.alpha = jp.at(1).get<double>();
        l.cov = read_matrix(jl.at("cov"), 2, where);
        l.support = span;
        f.line = l;
        break;
      }
      case Method::siadat: {
        ImplicitLine l;
        l.a = jp.at(0).get<double>();
        l.b = jp.at(1).get<double>();
        l.c = jp.at(2).get<double>();
        l.cov = read_matrix(jl.at("cov"), 3, where);
        l.support = span;
        f.line = l;
        break;
      }
    }
    map.lines.push_back(std::move(f));
  }

  for (const json& jc : j.at("corners")) {
    const std::string where = "corner " + std::to_string(map.corners.size());
    CornerFeature c;
    c.x = jc.at("x").get<double>();
    c.y = jc.at("y").get<double>();
    c.cov = read_matrix(jc.at("cov"), 2, where);
    const json& ids = jc.at("lines");
    if (!ids.is_array() || ids.size() != 2)
      throw validation_error(where + ": lines must hold two line ids");
    c.line1 = ids.at(0).get<int>();
    c.line2 = ids.at(1).get<int>();
    const int nl = static_cast<int>(map.lines.size());
    if (c.line1 < 0 || c.line1 >= nl || c.line2 < 0 || c.line2 >= nl || c.line1 == c.line2)
      throw validation_error(where + ": line ids out of range or equal");
    map.corners.push_back(std::move(c));
  }

  if (j.contains("diagnostics"))
    for (const json& jd : j.at("diagnostics")) map.diagnostics.push_back(jd.get<std::string>());
  return map;
}

}  // namespace

std::vector<FeatureMap> load_feature_maps(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw io_error("cannot open: " + path);
  json j;
  try {
    j = json::parse(file);
  } catch (const json::parse_error& e) {
    throw validation_error(path + ": " + e.what());
  }
  try {
    std::vector<FeatureMap> maps;
    if (j.is_array())
      for (const json& jm : j) maps.push_back(map_from_json(jm));
    else
      maps.push_back(map_from_json(j));
    return maps;
  } catch (const json::exception& e) {
    throw validation_error(path + ": " + e.what());
  }
}

FeatureMap load_feature_map(const std::string& path) {
  std::vector<FeatureMap> maps = load_feature_maps(path);
  if (maps.size() != 1)
    throw validation_error(path + ": holds " + std::to_string(maps.size()) +
                           " feature maps; expected exactly one");
  return std::move(maps.front());
}

void write_compare_report(std::ostream& os, const CompareReport& rep) {
  os << "# corner comparison across line-fit methods\n";
  os << "# n_scan_points: " << rep.n_scan_points << "\n";
  os << "# sigma_rho_m: " << g17(rep.noise.sigma_rho) << "\n";
  os << "# sigma_theta_rad: " << g17(rep.noise.sigma_theta) << "\n";
  os << "# x, y: corner position (mm); sx, sy: 1-sigma uncertainty (mm)\n";
  for (const std::string& d : rep.diagnostics) os << "# note: " << d << "\n";
  os << "corner";
  for (Method m : kAllMethods) {
    const char* n = method_name(m);
    os << '\t' << n << "_x" << '\t' << n << "_y" << '\t' << n << "_sx" << '\t' << n << "_sy";
  }
  os << '\n';
  for (const CompareRow& row : rep.rows) {
    os << row.corner_id;
    for (const CompareEntry& e : row.by) {
      if (!e.present) {
        os << "\t-\t-\t-\t-";
        continue;
      }
      os << '\t' << fixed(e.x * 1e3, 2) << '\t' << fixed(e.y * 1e3, 2) << '\t'
         << fixed(e.sx_mm, 3) << '\t' << fixed(e.sy_mm, 3);
    }
    os << '\n';
  }
  os << "mean";
  for (std::size_t mi = 0; mi < kAllMethods.size(); ++mi)
    os << "\t-\t-\t" << fixed(rep.mean_sx_mm[mi], 3) << '\t' << fixed(rep.mean_sy_mm[mi], 3);
  os << '\n';
}

void save_compare_report(const std::string& path, const CompareReport& rep) {
  std::ostringstream out;
  write_compare_report(out, rep);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw io_error("cannot open for writing: " + path);
  file << out.str();
  if (!file.flush()) throw io_error("write failed: " + path);
}

}  // namespace csf
