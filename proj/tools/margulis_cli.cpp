#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "margulis/errors.hpp"
#include "margulis/harness.hpp"

namespace {

std::string error_kind(const margulis::Error& e) {
  if (dynamic_cast<const margulis::ParseError*>(&e)) return "parse";
  if (dynamic_cast<const margulis::ValidationError*>(&e)) return "validation";
  if (dynamic_cast<const margulis::NotHyperbolicError*>(&e))
    return "not_hyperbolic";
  if (dynamic_cast<const margulis::DegeneratePairError*>(&e))
    return "degenerate_pair";
  if (dynamic_cast<const margulis::DegenerateEndpointsError*>(&e))
    return "degenerate_endpoints";
  if (dynamic_cast<const margulis::NotCoveredError*>(&e)) return "not_covered";
  if (dynamic_cast<const margulis::NoOrbitFoundError*>(&e))
    return "no_orbit_found";
  if (dynamic_cast<const margulis::SingularSolveError*>(&e))
    return "singular_solve";
  if (dynamic_cast<const margulis::WordError*>(&e)) return "word";
  return "error";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Margulis space-time geometry toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  margulis::HarnessOptions options;
  std::string t_grid_text;

  for (const std::string& name : margulis::kCommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path,
                    "JSON config file; defaults to the example2 preset");
    sub->add_option("--seed", options.seed, "PRNG seed (mt19937_64)");
    sub->add_option("--depth", options.depth, "word depth for sampling");
    sub->add_option("--max-len", options.max_len,
                    "maximum conjugacy-class length");
    sub->add_option("--t-grid", t_grid_text, "comma-separated flow times");
    sub->add_option("--tol", options.tol, "residual tolerance");
    sub->add_option("--out", options.out_path, "output file for emitted data");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (!t_grid_text.empty()) {
      std::stringstream ss(t_grid_text);
      std::string item;
      while (std::getline(ss, item, ','))
        options.t_grid.push_back(std::stod(item));
    }
    const margulis::GroupConfig config =
        config_path.empty() ? margulis::preset_config("example2")
                            : margulis::load_config(config_path);
    const std::string command = app.get_subcommands().front()->get_name();
    const margulis::RunReport report =
        margulis::run_command(command, config, options);
    std::cout << report.to_json().dump(2) << std::endl;
    return report.pass() ? 0 : 2;
  } catch (const margulis::Error& e) {
    nlohmann::json record = {
        {"error", {{"type", error_kind(e)}, {"message", e.what()}}}};
    std::cout << record.dump(2) << std::endl;
    return 1;
  } catch (const std::exception& e) {
    nlohmann::json record = {
        {"error", {{"type", "internal"}, {"message", e.what()}}}};
    std::cout << record.dump(2) << std::endl;
    return 1;
  }
}
