// Batch driver: resolves a scenario/manifest config plus command-line
// overrides into one run, then emits the result CSV and run manifest.
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "comp/errors.hpp"
#include "comp/run.hpp"
#include "comp/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Uplink multi-cell cooperation study: rate regions, sum-rate curves, "
      "best-scheme maps and fading statistics under constrained backhaul"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  int threads = 1;
  uint64_t seed = 0;
  std::string quantizer, beta_grid, schemes_text, spc_text, envelope_text;
  std::string d_grid_text, gains_mode;
  int power_steps = 0, weight_steps = 0, trials = 0;
  double beta_fixed = 0.0, d_common = 0.0;

  const std::pair<const char*, const char*> cmds[] = {
      {"region", "weighted rate-region boundary over the backhaul grid"},
      {"curve", "best sum rate per scheme as a function of backhaul"},
      {"map", "winning scheme over a grid of UE positions at fixed backhaul"},
      {"montecarlo", "three-cell fading averages and backhaul efficiency"},
      {"gains", "source-coding / superposition gain table (or cooperation "
                "gain sweep, per scenario gains_mode)"}};
  for (const auto& [name, desc] : cmds) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->add_option("--config", config_path,
                  "scenario file (key = value) or run manifest (JSON)")
        ->required();
    s->add_option("--out", out_path, "output CSV path (manifest sits next "
                                     "to it); default <command>.csv");
    s->add_option("--threads", threads, "worker threads for grid/trial jobs");
    s->add_option("--seed", seed, "base RNG seed (fading draws)");
    s->add_option("--quantizer", quantizer,
                  "quantizer family: practical | rd | sc")
        ->check(CLI::IsMember({"practical", "rd", "sc"}));
    s->add_option("--beta-grid", beta_grid, "backhaul grid start:step:end");
    s->add_option("--power-steps", power_steps,
                  "points per power-split dimension");
    s->add_option("--weight-steps", weight_steps,
                  "boundary weights for region tracing");
    s->add_option("--schemes", schemes_text, "comma-separated scheme set");
    s->add_option("--spc", spc_text, "superposition coding: on | off")
        ->check(CLI::IsMember({"on", "off", "true", "false", "1", "0"}));
    s->add_option("--trials", trials, "fading realizations to average");
    s->add_option("--envelope", envelope_text,
                  "time-sharing envelope along beta: on | off")
        ->check(CLI::IsMember({"on", "off", "true", "false", "1", "0"}));
    s->add_option("--beta", beta_fixed, "fixed backhaul for the map command");
    s->add_option("--d", d_common, "common UE distance (three-cell model)");
    s->add_option("--d-grid", d_grid_text, "map distance grid start:step:end");
    s->add_option("--gains-mode", gains_mode,
                  "gains table flavor: coding | cooperation")
        ->check(CLI::IsMember({"coding", "cooperation"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const auto on = [](const std::string& v) {
    return v == "on" || v == "true" || v == "1";
  };
  try {
    comp::RunConfig cfg = comp::load_config(config_path);
    cfg.command = sub->get_name();
    if (sub->count("--threads")) cfg.threads = threads;
    if (sub->count("--seed")) cfg.seed = seed;
    if (sub->count("--quantizer")) cfg.quant = comp::parse_quantizer(quantizer);
    if (sub->count("--beta-grid")) cfg.beta_grid_text = beta_grid;
    if (sub->count("--power-steps")) cfg.power_steps = power_steps;
    if (sub->count("--weight-steps")) cfg.weight_steps = weight_steps;
    if (sub->count("--schemes")) cfg.schemes = comp::parse_name_list(schemes_text);
    if (sub->count("--spc")) cfg.spc = on(spc_text);
    if (sub->count("--trials")) cfg.trials = trials;
    if (sub->count("--envelope")) cfg.envelope = on(envelope_text);
    if (sub->count("--beta")) cfg.beta_fixed = beta_fixed;
    if (sub->count("--d")) cfg.d = d_common;
    if (sub->count("--d-grid")) cfg.d_grid_text = d_grid_text;
    if (sub->count("--gains-mode")) cfg.gains_mode = gains_mode;
    if (cfg.power_steps < 2)
      throw comp::ConfigError("power_steps: at least 2 grid points required");
    if (sub->count("--schemes") && cfg.schemes.empty())
      throw comp::ConfigError("scheme_set: empty scheme set");
    const std::string out =
        out_path.empty() ? cfg.command + ".csv" : out_path;
    comp::run_command(cfg, out);
  } catch (const comp::ParseError& e) {
    std::fprintf(stderr, "parse error: %s: %s\n", config_path.c_str(),
                 e.what());
    return 2;
  } catch (const comp::ConfigError& e) {
    std::fprintf(stderr, "infeasible configuration: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
