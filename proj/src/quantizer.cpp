#include "comp/quantizer.hpp"

#include <cmath>
#include <limits>

#include "comp/errors.hpp"

namespace comp {

Quantizer parse_quantizer(const std::string& s) {
  if (s == "practical") return Quantizer::practical;
  if (s == "rd" || s == "rate_distortion") return Quantizer::rate_distortion;
  if (s == "sc" || s == "source_coded") return Quantizer::source_coded;
  throw ConfigError("unknown quantizer '" + s + "' (practical|rd|sc)");
}

std::string quantizer_name(Quantizer q) {
  switch (q) {
    case Quantizer::practical: return "practical";
    case Quantizer::rate_distortion: return "rd";
    case Quantizer::source_coded: return "sc";
  }
  return "?";
}

double solve_phi(const RVec& evs, double budget) {
  const double kLn2 = std::log(2.0);
  double ev_max = 0.0;
  for (Eigen::Index i = 0; i < evs.size(); ++i)
    ev_max = std::max(ev_max, evs[i]);
  if (budget <= 1e-12 || ev_max <= 0.0)
    return std::numeric_limits<double>::infinity();
  auto rate_minus_budget = [&](double log_phi) {
    const double phi = std::exp(log_phi);
    double r = 0.0;
    for (Eigen::Index i = 0; i < evs.size(); ++i)
      r += std::log1p(std::max(evs[i], 0.0) / phi);
    return r / kLn2 - budget;
  };
  double lo = -90.0, hi = 90.0;
  if (rate_minus_budget(lo) < 0.0) return 0.0;  // budget never exhausted
  // rate(phi) decreases in phi; plain bisection to brentq-level tolerance.
  for (int it = 0; it < 240 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (rate_minus_budget(mid) > 0.0 ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

RVec quant_evs(const CMat& cov, Quantizer q) {
  if (q == Quantizer::practical) return cov.diagonal().real();
  return herm_eigenvalues(cov);
}

double practical_overhead(int n_bs_antennas) { return 2.0 * n_bs_antennas; }

}  // namespace comp
