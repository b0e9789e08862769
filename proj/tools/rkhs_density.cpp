#include <iostream>

#include <CLI11.hpp>

#include "rkhs/errors.hpp"
#include "rkhs/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Density and trace audits for reproducing kernel Hilbert spaces"};
  std::string command = "run";
  std::string config_path, canonical, stage = "all", out = "out";
  std::uint64_t seed = 0;
  bool list = false, print_config = false, quiet = false;

  app.add_option("command", command, "run (default) or list")->check(CLI::IsMember({"run", "list"}));
  auto* cfg = app.add_option("--config", config_path, "Experiment config (JSON)");
  auto* can = app.add_option("--canonical", canonical, "Name of a canonical experiment");
  cfg->excludes(can);
  app.add_option("--stage", stage, "audit | density | trace | gram | framebounds | locspec | verdict | all")
      ->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed, "Override the config seed");
  app.add_option("--out", out, "Output directory")->capture_default_str();
  app.add_flag("--list", list, "List canonical experiments");
  app.add_flag("--print-config", print_config, "Print the resolved config and exit");
  app.add_flag("--quiet", quiet, "Suppress the summary table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rkhs::exit_code::input_error;
  }

  if (list || command == "list") {
    for (const auto& n : rkhs::canonical_names()) std::cout << n << '\n';
    return 0;
  }

  rkhs::ExperimentConfig config;
  rkhs::RunOptions opt;
  try {
    if (!config_path.empty()) config = rkhs::load_config(config_path);
    else if (!canonical.empty()) config = rkhs::canonical_config(canonical);
    else throw rkhs::InputError("one of --config or --canonical is required");
    opt.stage = rkhs::parse_stage(stage);
  } catch (const rkhs::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return rkhs::exit_code::input_error;
  }
  if (*seed_opt) {
    opt.seed = seed;
    config.seed = seed;
  }
  if (print_config) {
    std::cout << rkhs::config_to_json(config).dump(2) << '\n';
    return 0;
  }
  opt.out_dir = out;

  const rkhs::RunResult r = rkhs::run(config, opt);
  if (!quiet) std::cout << rkhs::summary_table(r);
  if (r.exit_code != rkhs::exit_code::ok && !r.message.empty()) std::cerr << r.message << '\n';
  return r.exit_code;
}
