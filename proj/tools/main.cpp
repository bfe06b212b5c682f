#include <iostream>

#include <CLI11.hpp>

#include "cli/builtin.hpp"
#include "cli/config.hpp"
#include "cli/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"tfmod: modulation-space norms, Gabor frames and convolution estimates on finite grids"};
  app.require_subcommand(1);

  std::string config;
  tfmod::cli::RunOptions opts;
  auto* run = app.add_subcommand("run", "Run the experiments of a JSON config");
  run->add_option("config", config, "Config file")->required();
  run->add_option("--jobs,-j", opts.jobs, "Experiments run concurrently")->check(CLI::PositiveNumber);
  run->add_option("--out,-o", opts.out_dir, "Output directory");

  app.add_subcommand("schema", "Print the JSON schema of the config format");

  bool builtin = false;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_flag("--builtin", builtin, "Run the shipped self-check suite")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : tfmod::cli::kExitConfig;
  }

  if (run->parsed()) return tfmod::cli::run_command(config, opts, std::cout, std::cerr);
  if (verify->parsed()) return tfmod::cli::run_builtin_suite(std::cout);
  std::cout << tfmod::cli::config_schema();
  return 0;
}
