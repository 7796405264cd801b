#include <CLI11.hpp>

#include "bergman/cli/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Bergman kernel and Morse inequality numerics"};
  std::string config;
  bergman::cli::RunOptions options;
  app.add_option("--config", config, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
  app.add_option("--out", options.out_dir, "output directory, overrides the config");
  app.add_option("--jobs", options.jobs, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--seed", options.seed, "seed of the randomized identity suites");
  app.add_flag("--strict", options.strict, "treat warnings as failures");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : bergman::cli::kConfigError;
  }
  return bergman::cli::run_file(config, options);
}
