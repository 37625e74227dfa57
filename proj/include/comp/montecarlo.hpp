#pragma once
// Three-cell fading study: per-trial strategy curves averaged over Rayleigh
// realizations, plus the backhaul-efficiency readout of the hybrid curve.

#include <cstdint>
#include <string>
#include <vector>

#include "comp/channel.hpp"
#include "comp/quantizer.hpp"

namespace comp {

struct StrategyCurve {
  std::string name;
  std::vector<double> mean;     // per beta
  std::vector<double> ci_half;  // 95% normal-approximation half-width
};

struct MonteCarloResult {
  double d = 0.5;
  int n_trials = 0;
  uint64_t base_seed = 0;
  Quantizer quant = Quantizer::practical;
  std::vector<double> betas;
  std::vector<StrategyCurve> strategies;  // fixed order, see strategy_names()
};

// Strategy identifiers in emission order: receive combining without backhaul
// (mrc, irc, irca), the flat baselines (nocoop, mac), then the backhaul
// schemes (dis, dasc, hybrid, dasn, fdm).
const std::vector<std::string>& strategy_names();

// Deterministic for a given base seed regardless of thread count: trial t
// always uses seed base_seed + t and reduction runs in trial order.
MonteCarloResult run_montecarlo(double d, int n_trials,
                                const std::vector<double>& betas,
                                const CsiConfig& csi, Quantizer quant,
                                uint64_t base_seed, int threads = 1,
                                double sigma2 = 0.1, double theta = 3.5,
                                double gain_cal = 1.21);

// Smallest beta (linear interpolation) where the hybrid mean reaches
// no_coop + 0.5 * (mac - no_coop), divided by that half-gain. When the grid
// never reaches the level, `attained` is false and `max_fraction` reports
// the largest reached fraction of the full gain.
struct EfficiencyResult {
  double value = 0.0;
  bool attained = false;
  double max_fraction = 0.0;
};
EfficiencyResult backhaul_efficiency(const std::vector<double>& betas,
                                     const std::vector<double>& hybrid,
                                     double no_coop, double mac);

}  // namespace comp
