// config_io.hpp - reads the sectioned key-value configuration file.
//
//   [passive]
//   eps = [0.76, 0.65, 0.30]
//   tau = [0.005, 0.0025, 0.0002]
//   [coupling]
//   gamma = 0.95
//   kappa = 0.30
//
// '#' or ';' starts a comment. Both sections are required when a file is
// given; absent keys keep their defaults.

#pragma once

#include <string>

#include "ep3/types.hpp"

namespace ep3 {

SystemConfig parse_config(const std::string& text);
SystemConfig load_config(const std::string& path);

// The built-in defaults rendered in the file format above.
std::string default_config_text();

}  // namespace ep3
