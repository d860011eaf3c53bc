#include "heckeforge/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "heckeforge/field.hpp"
#include "heckeforge/rootdata.hpp"

namespace heckeforge::cli {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string unquote(std::string v) {
  if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                        (v.front() == '\'' && v.back() == '\'')))
    return v.substr(1, v.size() - 2);
  return v;
}

long to_long(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    long out = std::stol(v, &pos);
    require(pos == v.size(), Errc::ConfigError, "bad integer for " + key + ": '" + v + "'");
    return out;
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail(Errc::ConfigError, "bad integer for " + key + ": '" + v + "'");
  }
}

}  // namespace

std::vector<std::string> known_suites() {
  return {"relations", "coxeter",  "frobenius", "resolution",
          "duality",   "charproj", "graded",    "section7"};
}

long RunConfig::field_characteristic() const {
  if (field == "Q") return 0;
  if (field.rfind("Fp:", 0) == 0) {
    long p = to_long("field", field.substr(3));
    require(is_prime(p), Errc::ConfigError, "field characteristic must be prime");
    return p;
  }
  fail(Errc::ConfigError, "field must be \"Q\" or \"Fp:<p>\" (got '" + field + "')");
}

void RunConfig::validate() const {
  rootdata::cartan_type_from_string(type);
  auto iso = rootdata::isogeny_from_string(isogeny);
  if (iso == rootdata::Isogeny::GlStyle)
    require(central_rank >= 1, Errc::ConfigError, "gl_style needs central_rank >= 1");
  else
    require(central_rank == 0, Errc::ConfigError, "central_rank requires gl_style");
  prime_power_base(q);
  field_characteristic();
  require(n_max >= 0, Errc::ConfigError, "n_max must be nonnegative");
  require(c_max >= 1, Errc::ConfigError, "c_max must be positive");
  require(omega_cap >= 1, Errc::ConfigError, "omega_cap must be positive");
  auto known = known_suites();
  for (const auto& s : suites)
    require(std::count(known.begin(), known.end(), s) == 1, Errc::ConfigError,
            "unknown suite '" + s + "'");
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    require(eq != std::string::npos, Errc::ConfigError,
            "line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = unquote(trim(line.substr(eq + 1)));
    if (key == "type") {
      cfg.type = val;
    } else if (key == "isogeny") {
      cfg.isogeny = val;
    } else if (key == "central_rank") {
      cfg.central_rank = static_cast<int>(to_long(key, val));
    } else if (key == "q") {
      cfg.q = to_long(key, val);
    } else if (key == "field") {
      cfg.field = val;
    } else if (key == "n_max") {
      cfg.n_max = static_cast<int>(to_long(key, val));
    } else if (key == "c_max") {
      cfg.c_max = static_cast<int>(to_long(key, val));
    } else if (key == "omega_cap") {
      cfg.omega_cap = static_cast<int>(to_long(key, val));
    } else if (key == "seed") {
      cfg.seed = static_cast<unsigned long>(to_long(key, val));
    } else if (key == "out") {
      cfg.out = val;
    } else if (key == "timings") {
      cfg.timings = val == "true" || val == "1";
    } else if (key == "suites") {
      cfg.suites.clear();
      std::istringstream ss(val);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) cfg.suites.push_back(item);
      }
    } else {
      fail(Errc::ConfigError, "unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::ConfigError, "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace heckeforge::cli
