#include "csf/scan_io.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "csf/errors.hpp"
#include "csf/format.hpp"

namespace csf {

namespace {

bool parse_double(const std::string& tok, double& out) {
  char* end = nullptr;
  errno = 0;
  out = std::strtod(tok.c_str(), &end);
  return end == tok.c_str() + tok.size() && end != tok.c_str() && errno == 0;
}

// "# key value" -> true and fills value if the key matches
bool header_value(const std::string& line, const char* key, double& out) {
  std::istringstream ss(line);
  std::string hash, k, v;
  if (!(ss >> hash >> k >> v)) return false;
  if (k != key) return false;
  if (!parse_double(v, out)) return false;
  std::string rest;
  return !(ss >> rest);  // nothing may follow the value
}

}  // namespace

PolarScan read_scan(std::istream& in, const std::string& origin) {
  PolarScan scan;
  bool have_sr = false, have_st = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      double v;
      if (header_value(line, "sigma_rho_m", v)) {
        scan.noise.sigma_rho = v;
        have_sr = true;
      } else if (header_value(line, "sigma_theta_rad", v)) {
        scan.noise.sigma_theta = v;
        have_st = true;
      } else {
        std::string text = line.size() > 1 ? line.substr(line[1] == ' ' ? 2 : 1) : "";
        if (!scan.metadata.empty()) scan.metadata += '\n';
        scan.metadata += text;
      }
      continue;
    }
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw validation_error(origin + ":" + std::to_string(lineno) +
                             ": expected `theta<TAB>rho`, got: " + line);
    double theta, rho;
    if (!parse_double(line.substr(0, tab), theta) || !parse_double(line.substr(tab + 1), rho))
      throw validation_error(origin + ":" + std::to_string(lineno) + ": malformed number in: " + line);
    if (!(rho > 0.0))
      throw validation_error(origin + ":" + std::to_string(lineno) + ": non-positive range " +
                             g17(rho) + " (point index " + std::to_string(scan.points.size()) + ")");
    scan.points.push_back({rho, theta});
  }
  if (!have_sr || !have_st)
    throw validation_error(origin + ": missing sigma_rho_m / sigma_theta_rad header");
  validate(scan);
  return scan;
}

PolarScan load_scan(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw io_error("cannot open scan file: " + path);
  return read_scan(f, path);
}

void write_scan(const PolarScan& scan, std::ostream& out) {
  out << "# sigma_rho_m " << g17(scan.noise.sigma_rho) << "\n";
  out << "# sigma_theta_rad " << g17(scan.noise.sigma_theta) << "\n";
  if (!scan.metadata.empty()) {
    std::istringstream meta(scan.metadata);
    std::string line;
    while (std::getline(meta, line)) out << "# " << line << "\n";
  }
  for (const auto& p : scan.points) out << g17(p.theta) << '\t' << g17(p.rho) << "\n";
}

void save_scan(const PolarScan& scan, const std::string& path) {
  validate(scan);
  std::ofstream f(path);
  if (!f) throw io_error("cannot write scan file: " + path);
  write_scan(scan, f);
  if (!f) throw io_error("write failed: " + path);
}

}  // namespace csf
