#include "comp/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "comp/allocation.hpp"
#include "comp/errors.hpp"

namespace comp {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, int line) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + v + "'", line);
  }
}

long long parse_int(const std::string& v, int line) {
  try {
    size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + v + "'", line);
  }
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw ParseError("expected a boolean, got '" + v + "'", line);
}

const std::vector<std::string> kSchemeNames = {
    "nocoop", "mac", "dis", "cif", "dasd", "dasc", "fdm", "dasn", "hybrid"};

void validate_scheme_names(const std::vector<std::string>& names, int line) {
  for (const auto& n : names) {
    if (std::find(kSchemeNames.begin(), kSchemeNames.end(), n) ==
        kSchemeNames.end()) {
      if (line > 0) throw ParseError("unknown scheme '" + n + "'", line);
      throw ConfigError("scheme_set: unknown scheme '" + n + "'");
    }
  }
}

void load_manifest(RunConfig& cfg, const std::string& text,
                   const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Count the line of the reported byte offset for a useful message.
    int line = 1;
    for (size_t i = 0; i < std::min<size_t>(e.byte, text.size()); ++i)
      if (text[i] == '\n') ++line;
    throw ParseError(std::string("manifest: ") + e.what(), line);
  }
  try {
    if (j.contains("model")) {
      const auto& m = j["model"];
      cfg.model = m.value("kind", cfg.model);
      cfg.scenario.d1 = m.value("d1", cfg.scenario.d1);
      cfg.scenario.d2 = m.value("d2", cfg.scenario.d2);
      cfg.scenario.theta = m.value("theta", cfg.scenario.theta);
      cfg.scenario.phi1 = m.value("phi1", cfg.scenario.phi1);
      cfg.scenario.phi2 = m.value("phi2", cfg.scenario.phi2);
      cfg.scenario.phi12 = m.value("phi12", cfg.scenario.phi12);
      cfg.scenario.sigma2 = m.value("sigma2", cfg.scenario.sigma2);
      cfg.scenario.gain_cal = m.value("gain_cal", cfg.scenario.gain_cal);
      cfg.d = m.value("d", cfg.d);
      cfg.g11 = m.value("g11", cfg.g11);
      cfg.g12 = m.value("g12", cfg.g12);
      cfg.g21 = m.value("g21", cfg.g21);
      cfg.g22 = m.value("g22", cfg.g22);
      cfg.n_bs_antennas = m.value("n_bs_antennas", cfg.n_bs_antennas);
    }
    if (j.contains("csi")) {
      const auto& c = j["csi"];
      cfg.csi.n_pilots = c.value("n_pilots", cfg.csi.n_pilots);
      cfg.csi.pilot_power = c.value("pilot_power", cfg.csi.pilot_power);
      cfg.csi.pilot_noise = c.value("pilot_noise", cfg.csi.pilot_noise);
      cfg.csi.perfect = c.value("perfect", cfg.csi.perfect);
    }
    if (j.contains("run")) {
      const auto& r = j["run"];
      cfg.beta_grid_text = r.value("beta_grid", cfg.beta_grid_text);
      cfg.power_steps = r.value("power_steps", cfg.power_steps);
      cfg.weight_steps = r.value("weight_steps", cfg.weight_steps);
      if (r.contains("quantizer"))
        cfg.quant = parse_quantizer(r["quantizer"].get<std::string>());
      cfg.spc = r.value("spc", cfg.spc);
      if (r.contains("schemes"))
        cfg.schemes = r["schemes"].get<std::vector<std::string>>();
      cfg.seed = r.value("seed", cfg.seed);
      cfg.trials = r.value("trials", cfg.trials);
      cfg.threads = r.value("threads", cfg.threads);
      cfg.envelope = r.value("envelope", cfg.envelope);
      cfg.d_grid_text = r.value("d_grid", cfg.d_grid_text);
      cfg.beta_fixed = r.value("beta", cfg.beta_fixed);
      cfg.gains_mode = r.value("gains_mode", cfg.gains_mode);
      cfg.d_values_text = r.value("d_values", cfg.d_values_text);
      cfg.pilot_grid_text = r.value("pilot_grid", cfg.pilot_grid_text);
    }
    if (j.contains("command") && cfg.command.empty())
      cfg.command = j["command"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("manifest " + path + ": " + e.what(), 1);
  }
  validate_scheme_names(cfg.schemes, /*line=*/-1);
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("number_list: malformed entry '" + item + "'");
    }
  }
  return out;
}

std::vector<std::string> parse_name_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value, int line) {
  if (key == "model") {
    if (value != "scenario2x2" && value != "direct2x2" && value != "cells3")
      throw ParseError("unknown model '" + value + "'", line);
    cfg.model = value;
  } else if (key == "d1") {
    cfg.scenario.d1 = parse_double(value, line);
  } else if (key == "d2") {
    cfg.scenario.d2 = parse_double(value, line);
  } else if (key == "d") {
    cfg.d = parse_double(value, line);
  } else if (key == "theta") {
    cfg.scenario.theta = parse_double(value, line);
  } else if (key == "phi1") {
    cfg.scenario.phi1 = parse_double(value, line);
  } else if (key == "phi2") {
    cfg.scenario.phi2 = parse_double(value, line);
  } else if (key == "phi12") {
    cfg.scenario.phi12 = parse_double(value, line);
  } else if (key == "sigma2") {
    cfg.scenario.sigma2 = parse_double(value, line);
  } else if (key == "gain_cal") {
    cfg.scenario.gain_cal = parse_double(value, line);
  } else if (key == "n_bs_antennas") {
    cfg.n_bs_antennas = static_cast<int>(parse_int(value, line));
  } else if (key == "g11") {
    cfg.g11 = parse_double(value, line);
  } else if (key == "g12") {
    cfg.g12 = parse_double(value, line);
  } else if (key == "g21") {
    cfg.g21 = parse_double(value, line);
  } else if (key == "g22") {
    cfg.g22 = parse_double(value, line);
  } else if (key == "n_pilots") {
    const long long n = parse_int(value, line);
    if (n == 0) {
      cfg.csi.perfect = true;
    } else {
      cfg.csi.n_pilots = static_cast<int>(n);
      cfg.csi.perfect = false;
    }
  } else if (key == "pilot_power") {
    cfg.csi.pilot_power = parse_double(value, line);
  } else if (key == "pilot_noise") {
    cfg.csi.pilot_noise = parse_double(value, line);
  } else if (key == "perfect_csi") {
    cfg.csi.perfect = parse_bool(value, line);
  } else if (key == "beta_grid") {
    cfg.beta_grid_text = value;
  } else if (key == "power_steps") {
    cfg.power_steps = static_cast<int>(parse_int(value, line));
  } else if (key == "weight_steps") {
    cfg.weight_steps = static_cast<int>(parse_int(value, line));
  } else if (key == "quantizer") {
    try {
      cfg.quant = parse_quantizer(value);
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), line);
    }
  } else if (key == "spc") {
    cfg.spc = parse_bool(value, line);
  } else if (key == "schemes") {
    cfg.schemes = parse_name_list(value);
    validate_scheme_names(cfg.schemes, line);
  } else if (key == "seed") {
    cfg.seed = static_cast<uint64_t>(parse_int(value, line));
  } else if (key == "trials") {
    cfg.trials = static_cast<int>(parse_int(value, line));
  } else if (key == "threads") {
    cfg.threads = static_cast<int>(parse_int(value, line));
  } else if (key == "envelope") {
    cfg.envelope = parse_bool(value, line);
  } else if (key == "d_grid") {
    cfg.d_grid_text = value;
  } else if (key == "beta") {
    cfg.beta_fixed = parse_double(value, line);
  } else if (key == "gains_mode") {
    if (value != "coding" && value != "cooperation")
      throw ParseError("unknown gains_mode '" + value + "'", line);
    cfg.gains_mode = value;
  } else if (key == "d_values") {
    cfg.d_values_text = value;
  } else if (key == "pilot_grid") {
    cfg.pilot_grid_text = value;
  } else {
    throw ParseError("unknown key '" + key + "'", line);
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  RunConfig cfg;
  const size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    load_manifest(cfg, text, path);
    return cfg;
  }

  std::stringstream ss(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(ss, raw)) {
    ++line_no;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string lineText = trim(raw);
    if (lineText.empty()) continue;
    const size_t eq = lineText.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", line_no);
    const std::string key = trim(lineText.substr(0, eq));
    const std::string value = trim(lineText.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line_no);
    apply_config_entry(cfg, key, value, line_no);
  }
  return cfg;
}

}  // namespace comp
