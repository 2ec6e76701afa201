#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "uppe/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Fundamental solutions of the unidirectional pulse propagation equation"};
  std::string config_path;
  std::string out_dir;
  int threads = -1;
  std::string experiment;
  app.add_option("config", config_path, "Configuration file")->required();
  app.add_option("--out", out_dir, "Output directory (default: [output] dir, then $UPPE_GREEN_OUT, then ./uppe_out)");
  app.add_option("--threads", threads, "Worker threads, 0 = auto; overrides the config")->check(CLI::Range(0, 4096));
  app.add_option("--experiment", experiment, "Override the configured experiment");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? uppe::kExitOk : uppe::kExitConfigError;
  }

  uppe::ExperimentConfig cfg;
  try {
    cfg = uppe::load_config(config_path);
  } catch (const uppe::ConfigError& e) {
    std::cerr << config_path << ": " << e.what() << "\n";
    return uppe::kExitConfigError;
  }
  if (!experiment.empty()) {
    const auto e = uppe::experiment_from_string(experiment);
    if (!e) {
      std::cerr << "unknown experiment '" << experiment << "'\n";
      return uppe::kExitConfigError;
    }
    cfg.experiment = *e;
  }
  if (threads >= 0) cfg.threads = threads;

  std::string dir = out_dir;
  if (dir.empty()) dir = cfg.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv("UPPE_GREEN_OUT");
    dir = env && *env ? env : "uppe_out";
  }
  return uppe::run(cfg, dir, std::cout);
}
