#pragma once
// Run configuration: defaults, scenario-file parsing (key = value grammar),
// and run-manifest round-tripping.

#include <cstdint>
#include <string>
#include <vector>

#include "comp/channel.hpp"
#include "comp/quantizer.hpp"

namespace comp {

struct RunConfig {
  std::string command;  // region | curve | map | montecarlo | gains

  // Channel model. "scenario2x2": deterministic two-cell geometry;
  // "direct2x2": explicit 2x2 single-antenna link gains; "cells3": three
  // cells with Rayleigh fading drawn from the seed.
  std::string model = "scenario2x2";
  Scenario2x2 scenario;
  double d = 0.5;  // cells3 common UE distance
  double g11 = 1.0, g12 = 0.25, g21 = 0.5, g22 = 1.0;  // direct2x2 gains
  int n_bs_antennas = 2;
  CsiConfig csi;

  // Run parameters; empty grid strings resolve to per-model defaults.
  std::string beta_grid_text;
  int power_steps = 9;
  int weight_steps = 33;
  Quantizer quant = Quantizer::rate_distortion;
  bool spc = true;
  std::vector<std::string> schemes;  // empty -> per-command default
  uint64_t seed = 12345;
  int trials = 500;
  int threads = 1;
  bool envelope = true;

  // map
  std::string d_grid_text = "0.1:0.025:0.6";
  double beta_fixed = 4.0;

  // gains
  std::string gains_mode = "coding";  // coding | cooperation
  std::string d_values_text = "0.2:0.1:0.6";
  std::string pilot_grid_text = "1,2,0";  // 0 = perfect CSI
};

// Reads either a scenario file (one `key = value` per line, `#` comments;
// unknown keys or malformed values raise ParseError with the line number)
// or, when the first non-space byte is '{', a previously written run
// manifest whose resolved parameters are loaded back.
RunConfig load_config(const std::string& path);

// Single key/value application, shared by the file parser and tests.
void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value, int line_no);

// Comma-separated doubles ("1,2,0"); throws ConfigError on malformed input.
std::vector<double> parse_number_list(const std::string& text);

// Comma-separated names, trimmed; empty text -> empty list.
std::vector<std::string> parse_name_list(const std::string& text);

}  // namespace comp
