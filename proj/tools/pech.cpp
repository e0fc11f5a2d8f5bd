#include <iostream>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "pech/errors.hpp"
#include "runner/commands.hpp"

using namespace pech::runner;

int main(int argc, char** argv) {
  CLI::App app{"Primitive-equation channel simulations, estimate certificates and inequality sweeps"};
  app.require_subcommand(1);

  std::string config, perturb, snapshot;
  bool perturb_given = false;

  auto* sim = app.add_subcommand("simulate", "integrate a run and certify the estimate ladder");
  sim->add_option("config", config, "run configuration")->required();

  auto* twin = app.add_subcommand("twin", "integrate two nearby runs and track their distance");
  twin->add_option("config", config, "run configuration")->required();
  twin->add_option("--perturb", perturb, "none | snapshot:<path> | <v1|v2|T>:kx,ky,m:amp")
      ->each([&](const std::string&) { perturb_given = true; });

  auto* lab = app.add_subcommand("ineqlab", "sweep the functional inequalities over random trial functions");
  lab->add_option("config", config, "run configuration")->required();

  auto* info = app.add_subcommand("snapshot-info", "print the header and norms of a snapshot");
  info->add_option("path", snapshot, "snapshot file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (info->parsed()) return cmd_snapshot_info(snapshot, std::cout);
    const RunConfig c = parse_config(config);
    if (sim->parsed()) return cmd_simulate(c, std::cout);
    if (twin->parsed()) return cmd_twin(c, perturb_given ? perturb : c.perturb, std::cout);
    return cmd_ineqlab(c, std::cout);
  } catch (const pech::ConfigError& e) {
    spdlog::error("config: {}", e.what());
    return bad_input;
  } catch (const pech::FormatError& e) {
    spdlog::error("format: {}", e.what());
    return bad_input;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return failed;
  }
}
