#pragma once
// Command driver shared by the CLI binary and the end-to-end tests: executes
// one resolved RunConfig, writing the result CSV and the run manifest.

#include <string>

#include "comp/scenario.hpp"

namespace comp {

// Writes <out_csv> plus a manifest at <out_csv minus extension>.manifest.json.
// Throws ParseError (malformed inputs) or ConfigError (named precondition).
void run_command(const RunConfig& cfg, const std::string& out_csv);

// Manifest path convention used by run_command.
std::string manifest_path_for(const std::string& out_csv);

}  // namespace comp
