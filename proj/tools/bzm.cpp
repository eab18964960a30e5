#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "bzm/cli/commands.hpp"
#include "bzm/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"bzm: Littlewood-Paley tools and solvers for the zero-Mach system"};
  std::string command, config_path, out = "out";
  std::optional<std::uint64_t> seed;
  app.add_option("command", command, "decompose | norm | bony-check | inequality-probe | solve | picard | lifespan | continuation")
      ->required()
      ->check(CLI::IsMember(bzm::command_names()));
  app.add_option("--config", config_path, "key = value configuration file")->required();
  app.add_option("--seed", seed, "overrides the config seed");
  app.add_option("--out", out, "output directory");
  CLI11_PARSE(app, argc, argv);

  bzm::Config cfg;
  try {
    cfg = bzm::Config::load(config_path);
  } catch (const bzm::Error& e) {
    std::cerr << "bzm: " << e.what() << '\n';
    return 1;
  }
  return bzm::run_command(command, std::move(cfg), seed, out);
}
