#pragma once

#include <stdexcept>
#include <string>

namespace csf {

// Error taxonomy mirrors the CLI exit-code contract:
//   2 usage, 3 input validation, 4 degenerate geometry, 5 I/O.
struct toolkit_error : std::runtime_error {
  int exit_code;
  toolkit_error(int code, const std::string& what) : std::runtime_error(what), exit_code(code) {}
};

struct validation_error : toolkit_error {
  explicit validation_error(const std::string& what) : toolkit_error(3, what) {}
};

struct geometry_error : toolkit_error {
  explicit geometry_error(const std::string& what) : toolkit_error(4, what) {}
};

struct io_error : toolkit_error {
  explicit io_error(const std::string& what) : toolkit_error(5, what) {}
};

}  // namespace csf
