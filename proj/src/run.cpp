#include "comp/run.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "comp/analysis.hpp"
#include "comp/errors.hpp"
#include "comp/montecarlo.hpp"
#include "comp/schemes3.hpp"

namespace comp {

namespace {

std::string fmt9(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

Model build_model(const RunConfig& cfg) {
  if (cfg.model == "scenario2x2")
    return make_model(cfg.scenario, cfg.csi, cfg.n_bs_antennas);
  if (cfg.model == "direct2x2") {
    if (cfg.n_bs_antennas != 1)
      throw ConfigError(
          "n_bs_antennas: direct2x2 links are single-antenna (set 1)");
    CMat h(2, 2);
    h << std::sqrt(cfg.g11), std::sqrt(cfg.g12), std::sqrt(cfg.g21),
        std::sqrt(cfg.g22);
    const BuiltChannel built = direct_channel(h);
    return Model(built.h, built.avg, estimation_error_variance(cfg.csi),
                 cfg.scenario.sigma2, 1);
  }
  if (cfg.model == "cells3") {
    const RMat avg = three_cell_avg_gains(cfg.d, cfg.scenario.theta,
                                          cfg.scenario.gain_cal);
    const CMat h = sample_rayleigh_channel(avg, cfg.seed);
    return Model(h, avg, estimation_error_variance(cfg.csi),
                 cfg.scenario.sigma2, 2);
  }
  throw ConfigError("model: unknown model '" + cfg.model + "'");
}

std::string resolve_beta_text(const RunConfig& cfg) {
  if (!cfg.beta_grid_text.empty()) return cfg.beta_grid_text;
  return cfg.model == "cells3" ? "0:1:30" : "0:0.25:12";
}

std::vector<std::string> resolve_schemes(const RunConfig& cfg) {
  if (!cfg.schemes.empty()) return cfg.schemes;
  if (cfg.command == "region")
    return {"nocoop", "mac", "dis", "cif", "dasd", "dasc", "fdm"};
  if (cfg.model == "cells3")
    return {"nocoop", "mac", "dis", "dasc", "hybrid", "dasn", "fdm"};
  return {"nocoop", "mac", "dis", "cif", "dasd", "dasc"};
}

SchemeKind kind_of(const std::string& name) {
  if (name == "nocoop") return SchemeKind::nocoop;
  if (name == "mac") return SchemeKind::mac;
  if (name == "dis") return SchemeKind::dis;
  if (name == "cif") return SchemeKind::cif;
  if (name == "dasd") return SchemeKind::dasd;
  if (name == "dasc") return SchemeKind::dasc;
  if (name == "fdm") return SchemeKind::fdm;
  if (name == "dasn") return SchemeKind::dasn;
  throw ConfigError("scheme_set: unknown scheme '" + name + "'");
}

SchemeOptions options_of(const RunConfig& cfg) {
  SchemeOptions opt;
  opt.quant = cfg.quant;
  opt.spc = cfg.spc;
  opt.power_steps = cfg.power_steps;
  return opt;
}

nlohmann::json base_manifest(const RunConfig& cfg,
                             const std::string& beta_text,
                             const std::vector<std::string>& schemes,
                             const std::string& out_csv) {
  nlohmann::json j;
  j["command"] = cfg.command;
  j["model"] = {{"kind", cfg.model},
                {"d1", cfg.scenario.d1},
                {"d2", cfg.scenario.d2},
                {"d", cfg.d},
                {"theta", cfg.scenario.theta},
                {"phi1", cfg.scenario.phi1},
                {"phi2", cfg.scenario.phi2},
                {"phi12", cfg.scenario.phi12},
                {"sigma2", cfg.scenario.sigma2},
                {"gain_cal", cfg.scenario.gain_cal},
                {"g11", cfg.g11},
                {"g12", cfg.g12},
                {"g21", cfg.g21},
                {"g22", cfg.g22},
                {"n_bs_antennas", cfg.n_bs_antennas}};
  j["csi"] = {{"n_pilots", cfg.csi.n_pilots},
              {"pilot_power", cfg.csi.pilot_power},
              {"pilot_noise", cfg.csi.pilot_noise},
              {"perfect", cfg.csi.perfect}};
  j["run"] = {{"beta_grid", beta_text},
              {"power_steps", cfg.power_steps},
              {"weight_steps", cfg.weight_steps},
              {"quantizer", quantizer_name(cfg.quant)},
              {"spc", cfg.spc},
              {"schemes", schemes},
              {"seed", cfg.seed},
              {"trials", cfg.trials},
              {"threads", cfg.threads},
              {"envelope", cfg.envelope},
              {"d_grid", cfg.d_grid_text},
              {"beta", cfg.beta_fixed},
              {"gains_mode", cfg.gains_mode},
              {"d_values", cfg.d_values_text},
              {"pilot_grid", cfg.pilot_grid_text}};
  j["versions"] = {
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                    std::to_string(EIGEN_MAJOR_VERSION) + "." +
                    std::to_string(EIGEN_MINOR_VERSION)},
      {"cli11", CLI11_VERSION},
      {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                            std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                            std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
      {"compiler", __VERSION__}};
  j["output_csv"] = out_csv;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("output: cannot write '" + path + "'");
  out << text;
}

std::string curve_header(int n_ue) {
  std::string h = "beta,scheme,quantizer,sum_rate";
  for (int k = 1; k <= n_ue; ++k) h += ",r" + std::to_string(k);
  return h + "\n";
}

void append_curve_row(std::string& csv, double beta, const std::string& scheme,
                      const std::string& quant, double sum,
                      const std::vector<double>& rates, int n_ue) {
  csv += fmt9(beta);
  csv += ',';
  csv += scheme;
  csv += ',';
  csv += quant;
  csv += ',';
  csv += fmt9(sum);
  for (int k = 0; k < n_ue; ++k) {
    csv += ',';
    if (k < static_cast<int>(rates.size())) csv += fmt9(rates[k]);
  }
  csv += '\n';
}

// ------------------------------------------------------------------------
void cmd_curve(const RunConfig& cfg, const std::string& out_csv) {
  const std::string beta_text = resolve_beta_text(cfg);
  const std::vector<double> betas = parse_beta_grid(beta_text);
  const std::vector<std::string> schemes = resolve_schemes(cfg);
  if (schemes.empty()) throw ConfigError("scheme_set: empty scheme set");
  const Model mod = build_model(cfg);
  const SchemeOptions opt = options_of(cfg);
  const std::string qname = quantizer_name(cfg.quant);
  const int K = mod.n_ue();

  std::string csv = curve_header(K);
  const double macv = mac_sum_rate(mod, RVec::Ones(K));
  const double ncb = no_coop_best(mod).sum_rate;

  if (cfg.model == "cells3") {
    // Single-realization three-cell curves; per-UE rate columns are not
    // tracked by these strategies and stay empty.
    std::vector<double> hyb_src_dis, hyb_src_dasc;
    for (const std::string& name : schemes) {
      std::vector<double> vals;
      if (name == "nocoop") {
        vals.assign(betas.size(), ncb);
      } else if (name == "mac") {
        vals.assign(betas.size(), macv);
      } else if (name == "dis") {
        vals = dis3_curve(mod, betas, cfg.quant, ncb);
      } else if (name == "dasc") {
        vals = dasc3_curve(mod, betas, cfg.quant, ncb);
      } else if (name == "dasn") {
        vals = dasn3_curve(mod, betas, cfg.quant);
      } else if (name == "fdm") {
        vals = fdm3_curve(mod, betas, cfg.quant);
      } else if (name == "hybrid") {
        const auto a = dis3_curve(mod, betas, cfg.quant, ncb);
        const auto b = dasc3_curve(mod, betas, cfg.quant, ncb);
        vals.resize(betas.size());
        for (size_t i = 0; i < betas.size(); ++i)
          vals[i] = std::max(a[i], b[i]);
        vals = upper_concave_envelope(betas, vals);
      } else {
        throw ConfigError("scheme_set: '" + name +
                          "' is not available for the three-cell model");
      }
      if (cfg.envelope) {
        vals = running_max(vals);
        vals = upper_concave_envelope(betas, vals);
      }
      for (size_t i = 0; i < betas.size(); ++i)
        append_curve_row(csv, betas[i], name, qname, vals[i], {}, K);
    }
    nlohmann::json man = base_manifest(cfg, beta_text, schemes, out_csv);
    man["resolved"] = {{"mac_ceiling", macv}, {"nocoop_floor", ncb}};
    write_text(out_csv, csv);
    write_text(manifest_path_for(out_csv), man.dump(2) + "\n");
    return;
  }

  for (const std::string& name : schemes) {
    const SchemeKind k = kind_of(name);
    if (k == SchemeKind::dasn)
      throw ConfigError(
          "scheme_set: 'dasn' is only available for the three-cell model");
    const auto pts = scheme_curve(mod, k, betas, opt, cfg.envelope);
    for (size_t i = 0; i < betas.size(); ++i) {
      std::vector<double> rates(pts[i].rates.data(),
                                pts[i].rates.data() + K);
      append_curve_row(csv, betas[i], name, qname, pts[i].value, rates, K);
    }
  }
  nlohmann::json man = base_manifest(cfg, beta_text, schemes, out_csv);
  man["resolved"] = {{"mac_ceiling", macv}, {"nocoop_floor", ncb}};
  write_text(out_csv, csv);
  write_text(manifest_path_for(out_csv), man.dump(2) + "\n");
}

// ------------------------------------------------------------------------
void cmd_region(const RunConfig& cfg, const std::string& out_csv) {
  const std::string beta_text = resolve_beta_text(cfg);
  const std::vector<double> betas = parse_beta_grid(beta_text);
  const std::vector<std::string> schemes = resolve_schemes(cfg);
  if (schemes.empty()) throw ConfigError("scheme_set: empty scheme set");
  if (cfg.weight_steps < 2)
    throw ConfigError("weight_steps: at least two boundary weights required");
  const Model mod = build_model(cfg);
  const SchemeOptions opt = options_of(cfg);
  std::vector<SchemeKind> kinds;
  for (const auto& n : schemes) kinds.push_back(kind_of(n));
  const std::vector<double> weights = weight_grid(cfg.weight_steps);
  const PerformanceRegion reg =
      performance_region(mod, kinds, betas, weights, opt);

  const int K = mod.n_ue();
  const std::string qname = quantizer_name(cfg.quant);
  std::string csv = curve_header(K);
  for (const SchemeRegion& sr : reg.schemes) {
    for (const RateBackhaulPoint& p : sr.points) {
      std::vector<double> rates(p.rates.data(), p.rates.data() + K);
      append_curve_row(csv, p.beta, scheme_name(sr.scheme), qname,
                       p.rates.sum(), rates, K);
    }
  }
  nlohmann::json man = base_manifest(cfg, beta_text, schemes, out_csv);
  man["resolved"] = {{"mac_ceiling", mac_sum_rate(mod, RVec::Ones(K))},
                     {"nocoop_floor", no_coop_best(mod).sum_rate},
                     {"weights", weights}};
  write_text(out_csv, csv);
  write_text(manifest_path_for(out_csv), man.dump(2) + "\n");
}

// ------------------------------------------------------------------------
void cmd_map(const RunConfig& cfg, const std::string& out_csv) {
  std::vector<double> d_grid;
  try {
    d_grid = parse_beta_grid(cfg.d_grid_text);
  } catch (const ConfigError&) {
    throw ConfigError("d_grid: malformed grid '" + cfg.d_grid_text + "'");
  }
  for (double d : d_grid)
    if (d <= 0.0 || d >= 1.0)
      throw ConfigError("d_grid: distances must lie strictly inside (0,1)");
  const SchemeOptions opt = options_of(cfg);
  const SchemeMap map = best_scheme_map(d_grid, d_grid, cfg.beta_fixed,
                                        cfg.scenario, cfg.csi, opt,
                                        std::max(1, cfg.threads));
  std::string csv = "d1,d2,winner,flag";
  for (SchemeKind k : map.schemes) csv += ",sum_" + scheme_name(k);
  csv += '\n';
  for (const MapCell& c : map.cells) {
    csv += fmt9(c.d1);
    csv += ',';
    csv += fmt9(c.d2);
    csv += ',';
    csv += scheme_name(c.winner);
    csv += ',';
    csv += c.flag ? '1' : '0';
    for (double s : c.sums) {
      csv += ',';
      csv += fmt9(s);
    }
    csv += '\n';
  }
  nlohmann::json man = base_manifest(cfg, resolve_beta_text(cfg),
                                     {"dis", "cif", "dasd", "dasc"}, out_csv);
  man["resolved"] = {{"beta", cfg.beta_fixed},
                     {"d_grid_points", d_grid},
                     {"flag_rule", "max(dasc,dis) > 1.1 * min(dasc,dis)"}};
  write_text(out_csv, csv);
  write_text(manifest_path_for(out_csv), man.dump(2) + "\n");
}

// ------------------------------------------------------------------------
void cmd_montecarlo(const RunConfig& cfg, const std::string& out_csv) {
  if (cfg.model != "cells3")
    throw ConfigError("model: montecarlo requires the cells3 model");
  if (cfg.trials < 1)
    throw ConfigError("n_trials: at least one trial required");
  const std::string beta_text = resolve_beta_text(cfg);
  const std::vector<double> betas = parse_beta_grid(beta_text);
  const MonteCarloResult res = run_montecarlo(
      cfg.d, cfg.trials, betas, cfg.csi, cfg.quant, cfg.seed,
      std::max(1, cfg.threads), cfg.scenario.sigma2, cfg.scenario.theta,
      cfg.scenario.gain_cal);

  const int K = 3;
  const std::string qname = quantizer_name(cfg.quant);
  std::string csv = curve_header(K);
  for (const StrategyCurve& s : res.strategies)
    for (size_t i = 0; i < betas.size(); ++i)
      append_curve_row(csv, betas[i], s.name, qname, s.mean[i], {}, K);

  double ncb = 0.0, macv = 0.0;
  std::vector<double> hybrid;
  nlohmann::json ci;
  for (const StrategyCurve& s : res.strategies) {
    ci[s.name] = s.ci_half;
    if (s.name == "nocoop") ncb = s.mean[0];
    if (s.name == "mac") macv = s.mean[0];
    if (s.name == "hybrid") hybrid = s.mean;
  }
  const EfficiencyResult eff = backhaul_efficiency(betas, hybrid, ncb, macv);
  nlohmann::json man =
      base_manifest(cfg, beta_text, strategy_names(), out_csv);
  man["resolved"] = {
      {"mac_ceiling", macv},
      {"nocoop_floor", ncb},
      {"ci_half", ci},
      {"efficiency",
       {{"attained", eff.attained},
        {"value", eff.attained ? nlohmann::json(eff.value)
                               : nlohmann::json(nullptr)},
        {"max_fraction", eff.max_fraction}}}};
  write_text(out_csv, csv);
  write_text(manifest_path_for(out_csv), man.dump(2) + "\n");
}

// ------------------------------------------------------------------------
void cmd_gains(const RunConfig& cfg, const std::string& out_csv) {
  std::vector<double> d_values;
  try {
    d_values = parse_beta_grid(cfg.d_values_text);
  } catch (const ConfigError&) {
    d_values = parse_number_list(cfg.d_values_text);
  }
  if (d_values.empty())
    throw ConfigError("d_values: empty distance sweep");
  for (double d : d_values)
    if (d <= 0.0 || d >= 1.0)
      throw ConfigError("d_values: distances must lie strictly inside (0,1)");

  std::string csv;
  nlohmann::json resolved;
  if (cfg.gains_mode == "cooperation") {
    const std::vector<double> pilots = parse_number_list(cfg.pilot_grid_text);
    if (pilots.empty()) throw ConfigError("pilot_grid: empty pilot sweep");
    csv = "n_pilots,d,nocoop,mac,gain_pct\n";
    for (double np : pilots) {
      CsiConfig csi = cfg.csi;
      if (np <= 0.0) {
        csi.perfect = true;
      } else {
        csi.perfect = false;
        csi.n_pilots = static_cast<int>(np);
      }
      for (double d : d_values) {
        Scenario2x2 s = cfg.scenario;
        s.d1 = s.d2 = d;
        const Model mod = make_model(s, csi, cfg.n_bs_antennas);
        const double ncb = no_coop_best(mod).sum_rate;
        const double macv = mac_sum_rate(mod, RVec::Ones(mod.n_ue()));
        csv += fmt9(np);
        csv += ',';
        csv += fmt9(d);
        csv += ',';
        csv += fmt9(ncb);
        csv += ',';
        csv += fmt9(macv);
        csv += ',';
        csv += fmt9(100.0 * (macv / ncb - 1.0));
        csv += '\n';
      }
    }
    resolved = {{"pilot_grid", pilots}, {"d_values", d_values}};
  } else {
    const std::string beta_text = resolve_beta_text(cfg);
    const std::vector<double> betas = parse_beta_grid(beta_text);
    const auto rows = coding_gain_analysis(d_values, cfg.scenario, cfg.csi,
                                           betas, cfg.power_steps);
    csv = "scheme,variant,d,base_best,variant_best,gain_pct\n";
    for (const CodingGainRow& r : rows) {
      csv += scheme_name(r.scheme);
      csv += ',';
      csv += r.variant;
      csv += ',';
      csv += fmt9(r.d);
      csv += ',';
      csv += fmt9(r.base_best);
      csv += ',';
      csv += fmt9(r.variant_best);
      csv += ',';
      csv += fmt9(r.gain_pct);
      csv += '\n';
    }
    resolved = {{"beta_grid", beta_text}, {"d_values", d_values}};
  }
  nlohmann::json man =
      base_manifest(cfg, resolve_beta_text(cfg), {}, out_csv);
  man["resolved"] = resolved;
  write_text(out_csv, csv);
  write_text(manifest_path_for(out_csv), man.dump(2) + "\n");
}

}  // namespace

std::string manifest_path_for(const std::string& out_csv) {
  const size_t dot = out_csv.find_last_of('.');
  const size_t slash = out_csv.find_last_of("/\\");
  const bool has_ext =
      dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return (has_ext ? out_csv.substr(0, dot) : out_csv) + ".manifest.json";
}

void run_command(const RunConfig& cfg, const std::string& out_csv) {
  if (cfg.command == "curve")
    cmd_curve(cfg, out_csv);
  else if (cfg.command == "region")
    cmd_region(cfg, out_csv);
  else if (cfg.command == "map")
    cmd_map(cfg, out_csv);
  else if (cfg.command == "montecarlo")
    cmd_montecarlo(cfg, out_csv);
  else if (cfg.command == "gains")
    cmd_gains(cfg, out_csv);
  else
    throw ConfigError("command: unknown command '" + cfg.command + "'");
}

}  // namespace comp
