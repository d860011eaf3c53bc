#pragma once

#include <string>
#include <vector>

#include "heckeforge/errors.hpp"

namespace heckeforge::cli {

struct RunConfig {
  std::string type = "A1";
  std::string isogeny = "simply_connected";
  int central_rank = 0;
  long q = 2;
  std::string field = "Q";  // "Q" or "Fp:<p>"
  int n_max = 4;
  int c_max = 4;
  int omega_cap = 2;  // truncation of the free part of Omega (gl_style)
  std::vector<std::string> suites;
  unsigned long seed = 1;
  std::string out;
  bool timings = false;

  long field_characteristic() const;  // 0 for Q
  void validate() const;
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

std::vector<std::string> known_suites();

}  // namespace heckeforge::cli
