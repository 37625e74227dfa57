#include "comp/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "comp/baselines.hpp"
#include "comp/errors.hpp"
#include "comp/schemes3.hpp"

namespace comp {

const std::vector<std::string>& strategy_names() {
  static const std::vector<std::string> names = {
      "mrc", "irc", "irca", "nocoop", "mac",
      "dis", "dasc", "hybrid", "dasn", "fdm"};
  return names;
}

namespace {

using TrialRow = std::vector<std::vector<double>>;  // [strategy][beta]

TrialRow run_trial(double d, const CsiConfig& csi, Quantizer quant,
                   uint64_t seed, const std::vector<double>& betas,
                   double sigma2, double theta, double gain_cal) {
  const RMat avg = three_cell_avg_gains(d, theta, gain_cal);
  const CMat h = sample_rayleigh_channel(avg, seed);
  const Model mod(h, avg, estimation_error_variance(csi), sigma2, 2);
  const size_t nb = betas.size();
  const RVec p1 = RVec::Ones(3);
  const Assignment ident{{0, 1, 2}, -1};

  const double ncb = no_coop_best(mod).sum_rate;
  const double macv = mac_sum_rate(mod, p1);
  const double mrcv = mrc_sum_rate(mod, p1, ident);
  const double ircv = irc_sum_rate(mod, p1, ident);
  const double ircav = irc_best_assignment(mod, p1);

  const auto dis = dis3_curve(mod, betas, quant, ncb);
  const auto dasc = dasc3_curve(mod, betas, quant, ncb);
  std::vector<double> hyb(nb);
  for (size_t i = 0; i < nb; ++i) hyb[i] = std::max(dis[i], dasc[i]);
  hyb = upper_concave_envelope(betas, hyb);
  const auto dasn = dasn3_curve(mod, betas, quant);
  const auto fdm = fdm3_curve(mod, betas, quant);

  TrialRow row(strategy_names().size(), std::vector<double>(nb));
  const std::vector<double> flats = {mrcv, ircv, ircav, ncb, macv};
  for (size_t s = 0; s < flats.size(); ++s)
    std::fill(row[s].begin(), row[s].end(), flats[s]);
  row[5] = dis;
  row[6] = dasc;
  row[7] = hyb;
  row[8] = dasn;
  row[9] = fdm;
  return row;
}

}  // namespace

MonteCarloResult run_montecarlo(double d, int n_trials,
                                const std::vector<double>& betas,
                                const CsiConfig& csi, Quantizer quant,
                                uint64_t base_seed, int threads,
                                double sigma2, double theta, double gain_cal) {
  if (n_trials < 1) throw ConfigError("n_trials: at least one trial required");
  const size_t nb = betas.size();
  const size_t ns = strategy_names().size();

  std::vector<TrialRow> rows(n_trials);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int t = next.fetch_add(1); t < n_trials; t = next.fetch_add(1))
      rows[t] = run_trial(d, csi, quant, base_seed + t, betas, sigma2, theta,
                          gain_cal);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  MonteCarloResult res;
  res.d = d;
  res.n_trials = n_trials;
  res.base_seed = base_seed;
  res.quant = quant;
  res.betas = betas;
  for (size_t s = 0; s < ns; ++s) {
    StrategyCurve c;
    c.name = strategy_names()[s];
    c.mean.assign(nb, 0.0);
    c.ci_half.assign(nb, 0.0);
    // Reduction in trial order: bit-identical for any thread count.
    std::vector<double> sum(nb, 0.0), sumsq(nb, 0.0);
    for (int t = 0; t < n_trials; ++t)
      for (size_t b = 0; b < nb; ++b) {
        sum[b] += rows[t][s][b];
        sumsq[b] += rows[t][s][b] * rows[t][s][b];
      }
    for (size_t b = 0; b < nb; ++b) {
      const double m = sum[b] / n_trials;
      c.mean[b] = m;
      if (n_trials > 1) {
        const double var =
            std::max(0.0, (sumsq[b] - n_trials * m * m) / (n_trials - 1));
        c.ci_half[b] = 1.96 * std::sqrt(var / n_trials);
      }
    }
    res.strategies.push_back(std::move(c));
  }
  return res;
}

EfficiencyResult backhaul_efficiency(const std::vector<double>& betas,
                                     const std::vector<double>& hybrid,
                                     double no_coop, double mac) {
  EfficiencyResult r;
  const double gain = mac - no_coop;
  const double tgt = no_coop + 0.5 * gain;
  double max_v = -std::numeric_limits<double>::infinity();
  for (double v : hybrid) max_v = std::max(max_v, v);
  r.max_fraction = gain > 0.0 ? (max_v - no_coop) / gain : 0.0;
  for (size_t i = 0; i < betas.size(); ++i) {
    if (hybrid[i] >= tgt) {
      r.attained = true;
      if (i == 0) {
        r.value = 0.0;
        return r;
      }
      const double b0 = betas[i - 1], v0 = hybrid[i - 1];
      const double bx =
          b0 + (betas[i] - b0) * (tgt - v0) / (hybrid[i] - v0);
      r.value = bx / (0.5 * gain);
      return r;
    }
  }
  r.attained = false;
  r.value = std::numeric_limits<double>::infinity();
  return r;
}

}  // namespace comp
