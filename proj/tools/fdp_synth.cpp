// fdp-synth: planted-ground-truth data for tests and demos.
//
//   fdp-synth fixture --dir DIR [--seed N] [--horizons T-3,T-2,T-1] [--repetitions N]
//   fdp-synth planted --out FILE [--seed N]

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fdp/data_model.hpp"
#include "fdp/fixture.hpp"
#include "fdp/synthetic.hpp"
#include "fdp/text.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Planted synthetic data for the fdp pipeline"};
  app.require_subcommand(1);

  fdp::fixture::FixtureOptions fx;
  std::string dir;
  std::string horizons = "T-1";
  std::optional<std::size_t> bp_epochs;
  auto* fixture_cmd = app.add_subcommand("fixture", "Write raw CLI inputs and a config file");
  fixture_cmd->add_option("--dir", dir, "Destination directory")->required();
  fixture_cmd->add_option("--seed", fx.seed, "Planted seed of the first horizon");
  fixture_cmd->add_option("--horizons", horizons, "Comma-separated horizons");
  fixture_cmd->add_option("--repetitions", fx.repetitions, "Hold-out repetitions in the config");
  fixture_cmd->add_option("--bp-epochs", bp_epochs, "BP epochs written to the config");

  std::string out_path;
  std::uint64_t seed = fdp::synthetic::kFixtureSeeds[0];
  auto* planted_cmd = app.add_subcommand("planted", "Write one planted 43-feature dataset");
  planted_cmd->add_option("--out", out_path, "Output CSV")->required();
  planted_cmd->add_option("--seed", seed, "Generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fixture_cmd->parsed()) {
      fx.horizons.clear();
      for (const auto& h : fdp::text::split_list(horizons)) {
        fx.horizons.push_back(fdp::parse_horizon(h));
      }
      fx.bp_epochs = bp_epochs;
      std::cout << fdp::fixture::write_fixture(dir, fx) << '\n';
    } else if (planted_cmd->parsed()) {
      const auto planted = fdp::synthetic::generate(fdp::synthetic::fixture_spec(seed));
      fdp::save_dataset(out_path, planted.dataset, fdp::Schema{});
      std::cout << out_path << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
