#include "comp/channel.hpp"

#include <cmath>

#include "comp/errors.hpp"
#include "comp/rng.hpp"

namespace comp {

double estimation_error_variance(const CsiConfig& c) {
  if (c.perfect) return 0.0;
  if (c.n_pilots < 1)
    throw ConfigError("csi: n_pilots must be >= 1 unless perfect");
  if (c.pilot_power <= 0.0) throw ConfigError("csi: pilot_power must be > 0");
  return c.pilot_noise / (c.n_pilots * c.pilot_power);
}

std::pair<double, double> pathgain_pair(double d, double theta) {
  const double a = std::pow(d, -theta);
  const double b = std::pow(1.0 - d, -theta);
  return {a / (a + b), b / (a + b)};
}

BuiltChannel build_scenario_channel(const Scenario2x2& s, int n_bs_antennas) {
  if (n_bs_antennas != 2)
    throw ConfigError("build_scenario_channel: only n_bs_antennas=2 supported");
  if (s.d1 <= 0.0 || s.d1 >= 1.0 || s.d2 <= 0.0 || s.d2 >= 1.0)
    throw ConfigError("build_scenario_channel: distances must be in (0,1)");
  if (s.theta <= 0.0 || s.sigma2 <= 0.0)
    throw ConfigError("build_scenario_channel: theta and sigma2 must be > 0");
  auto [l11, l21] = pathgain_pair(s.d1, s.theta);  // UE1: serving BS1, cross BS2
  auto [l22, l12] = pathgain_pair(s.d2, s.theta);  // UE2: serving BS2, cross BS1
  auto e = [](double p) { return std::polar(1.0, p); };
  const double g = std::sqrt(s.gain_cal);
  CMat h(4, 2);
  h(0, 0) = g * std::sqrt(l11);
  h(1, 0) = g * std::sqrt(l11);
  h(0, 1) = g * std::sqrt(l12) * e(-s.phi1 / 2 - s.phi12 / 2);
  h(1, 1) = g * std::sqrt(l12) * e(+s.phi1 / 2 - s.phi12 / 2);
  h(2, 0) = g * std::sqrt(l21) * e(-s.phi2 / 2 - s.phi12 / 2);
  h(3, 0) = g * std::sqrt(l21) * e(+s.phi2 / 2 - s.phi12 / 2);
  h(2, 1) = g * std::sqrt(l22);
  h(3, 1) = g * std::sqrt(l22);
  return {h, h.cwiseAbs2()};
}

BuiltChannel direct_channel(const CMat& h) { return {h, h.cwiseAbs2()}; }

RMat three_cell_avg_gains(double d, double theta, double gain_cal) {
  auto [ls, lc] = pathgain_pair(d, theta);
  RMat avg(6, 3);
  for (int k = 0; k < 3; ++k)
    for (int m = 0; m < 3; ++m) {
      const double g = (m == k ? ls : lc) * gain_cal;
      avg(2 * m, k) = g;
      avg(2 * m + 1, k) = g;
    }
  return avg;
}

CMat sample_rayleigh_channel(const RMat& avg, uint64_t seed) {
  GaussianStream gs(seed);
  CMat h(avg.rows(), avg.cols());
  for (Eigen::Index i = 0; i < avg.rows(); ++i)
    for (Eigen::Index j = 0; j < avg.cols(); ++j) {
      const double re = gs.next();
      const double im = gs.next();
      h(i, j) = cxd(re, im) * std::sqrt(avg(i, j) / 2.0);
    }
  return h;
}

EffectiveChannel effective_channel(const CMat& h, const RMat& avg,
                                   double sigma_e2) {
  EffectiveChannel ec;
  ec.avg = avg;
  if (sigma_e2 == 0.0) {
    ec.h_eff = h;
    ec.e_bar_sq = RMat::Zero(avg.rows(), avg.cols());
    return ec;
  }
  ec.h_eff = CMat::Zero(h.rows(), h.cols());
  ec.e_bar_sq = RMat::Zero(avg.rows(), avg.cols());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      if (avg(i, j) > 0.0) {
        ec.h_eff(i, j) = h(i, j) / std::sqrt(1.0 + sigma_e2 / avg(i, j));
        ec.e_bar_sq(i, j) = avg(i, j) * sigma_e2 / (avg(i, j) + sigma_e2);
      }
    }
  return ec;
}

RVec effective_noise_diag(const RMat& e_bar_sq, const RVec& p_tot) {
  return e_bar_sq * p_tot;
}

Model::Model(const CMat& h, const RMat& avg, double sigma_e2, double sigma2,
             int n_bs)
    : s2_(sigma2), nbs_(n_bs) {
  EffectiveChannel ec = effective_channel(h, avg, sigma_e2);
  he_ = std::move(ec.h_eff);
  eb2_ = std::move(ec.e_bar_sq);
}

CMat Model::sig(Rows r, const RVec& p) const {
  const CMat hm = he_.middleRows(r.start, r.len);
  return hm * p.asDiagonal() * hm.adjoint();
}

CMat Model::noise_base(Rows r, const RVec& p_tot) const {
  RVec pv = effective_noise_diag(eb2_, p_tot);
  CMat n = CMat::Zero(r.len, r.len);
  for (int i = 0; i < r.len; ++i) n(i, i) = s2_ + pv(r.start + i);
  return n;
}

CVec Model::h_col(Rows r, int k) const {
  return he_.block(r.start, k, r.len, 1);
}

CMat Model::sig_idx(const std::vector<int>& rows, const RVec& p) const {
  CMat hm(rows.size(), he_.cols());
  for (size_t i = 0; i < rows.size(); ++i) hm.row(i) = he_.row(rows[i]);
  return hm * p.asDiagonal() * hm.adjoint();
}

CMat Model::noise_base_idx(const std::vector<int>& rows,
                           const RVec& p_tot) const {
  RVec pv = effective_noise_diag(eb2_, p_tot);
  CMat n = CMat::Zero(rows.size(), rows.size());
  for (size_t i = 0; i < rows.size(); ++i) n(i, i) = s2_ + pv(rows[i]);
  return n;
}

Model make_model(const Scenario2x2& s, const CsiConfig& csi,
                 int n_bs_antennas) {
  BuiltChannel bc = build_scenario_channel(s, n_bs_antennas);
  return Model(bc.h, bc.avg, estimation_error_variance(csi), s.sigma2,
               n_bs_antennas);
}

}  // namespace comp
