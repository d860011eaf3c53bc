#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "heckeforge/suites.hpp"

namespace {

void apply_thread_cap() {
  if (const char* env = std::getenv("HECKEFORGE_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();
  CLI::App app{"heckeforge: pro-p Iwahori-Hecke algebra construction and verification"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::vector<std::string> suite_override;
  bool timings = false;

  auto* run = app.add_subcommand("run", "run verification suites from a config file");
  run->add_option("--config", config_path, "path to the configuration file")->required();
  run->add_option("--suite", suite_override, "suite name(s), overriding the config");
  run->add_option("--out", out_path, "report output path, overriding the config");
  run->add_flag("--timings", timings, "include wall-clock timings in the report");

  auto* describe = app.add_subcommand("describe", "print the static inventory of a configuration");
  describe->add_option("--config", config_path, "path to the configuration file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      auto cfg = heckeforge::cli::parse_config_file(config_path);
      if (!suite_override.empty()) cfg.suites = suite_override;
      if (!out_path.empty()) cfg.out = out_path;
      if (timings) cfg.timings = true;
      cfg.validate();
      auto report = heckeforge::suites::run_all(cfg);
      std::string text = report.dump(2);
      text.push_back('\n');
      if (!cfg.out.empty()) {
        std::ofstream os(cfg.out);
        if (!os.good()) {
          std::cerr << "cannot write report to '" << cfg.out << "'\n";
          return 2;
        }
        os << text;
      } else {
        std::cout << text;
      }
      int failures = heckeforge::suites::count_failures(report);
      for (const auto& s : report["suites"])
        std::cerr << "[" << std::string(s["verdict"]) << "] " << std::string(s["name"]) << "\n";
      return failures == 0 ? 0 : 1;
    }
    if (describe->parsed()) {
      auto cfg = heckeforge::cli::parse_config_file(config_path);
      std::cout << heckeforge::suites::describe(cfg);
      return 0;
    }
  } catch (const heckeforge::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
