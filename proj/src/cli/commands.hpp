#ifndef CURVELAB_CLI_COMMANDS_HPP
#define CURVELAB_CLI_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>

#include "json.hpp"

#include "curvelab/geometry.hpp"
#include "curvelab/sphere_grid.hpp"

namespace curvelab::cli {

enum ExitCode : int { kOk = 0, kRuntimeError = 1, kTimeExhausted = 2, kConfigError = 64 };

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  bool force = false;
};

/// Parses the file; throws ConfigError on I/O or syntax problems.
nlohmann::json load_config(const std::string& path);

/// {"mode": "axisym" | "full-s2", "n_theta": int, "n_phi": int}
GridPtr grid_from_json(const nlohmann::json& j, int n);

/// sphere | spheroid | harmonic | random | file, sampled as r (Radial) or h (Support).
ScalarField initial_surface(const nlohmann::json& j, GridPtr grid, Parametrization kind, std::mt19937_64& rng);

int cmd_flow(nlohmann::json config, const Options& opt, std::ostream& log);
int cmd_verify(nlohmann::json config, const Options& opt, std::ostream& log);
int cmd_identities(nlohmann::json config, const Options& opt, std::ostream& log);
/// Scans the output directory for artifacts and prints the criteria table.
int cmd_report(const Options& opt, std::ostream& log);

/// Full argument handling; returns the process exit code.
int run(int argc, char** argv);

}  // namespace curvelab::cli

#endif  // CURVELAB_CLI_COMMANDS_HPP
