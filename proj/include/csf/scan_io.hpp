#pragma once

#include <iosfwd>
#include <string>

#include "csf/scan.hpp"

namespace csf {

// Scan file format: '#'-prefixed header lines, then one `theta_rad<TAB>rho_m`
// record per line. Recognized header keys: `# sigma_rho_m <v>` and
// `# sigma_theta_rad <v>`; other '#' lines are kept as free metadata.
// Numbers carry 17 significant digits so load(save(s)) round-trips bit-exactly.
PolarScan load_scan(const std::string& path);
PolarScan read_scan(std::istream& in, const std::string& origin);

void save_scan(const PolarScan& scan, const std::string& path);
void write_scan(const PolarScan& scan, std::ostream& out);

}  // namespace csf
