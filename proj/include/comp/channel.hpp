// Scenario channel construction, Rayleigh sampling, and the imperfect-CSI
// transform (power-reduced effective channel + residual-error noise).
//
// Row convention everywhere: BS m owns rows [m*n_bs, (m+1)*n_bs).
#pragma once

#include <cstdint>
#include <vector>

#include "comp/linalg.hpp"

namespace comp {

struct Scenario2x2 {
  double d1 = 0.5, d2 = 0.5;      // normalized UE distances in [0,1]
  double theta = 3.5;             // pathloss exponent
  double phi1 = M_PI / 2, phi2 = M_PI / 2, phi12 = M_PI / 2;
  double sigma2 = 0.1;            // receiver noise power
  double gain_cal = 1.21;         // common link-gain calibration factor
};

struct CsiConfig {
  int n_pilots = 2;
  double pilot_power = 1.0;
  double pilot_noise = 0.1;
  bool perfect = false;
};

// sigma_E^2 = pilot_noise / (n_pilots * pilot_power); 0 when perfect.
double estimation_error_variance(const CsiConfig& c);

// (lambda_serving, lambda_cross) for one UE at distance d: the two-way
// pathloss split with received power across both BSs normalized to 1.
std::pair<double, double> pathgain_pair(double d, double theta);

struct BuiltChannel {
  CMat h;     // n_rx x K
  RMat avg;   // per-entry E{|h|^2}
};

// Two-cell, two-antenna deterministic scenario channel (4x2).
// n_bs_antennas must be 2; anything else throws ConfigError.
BuiltChannel build_scenario_channel(const Scenario2x2& s, int n_bs_antennas);

// Explicit channel matrix (any shape); avg gains taken as |h|^2.
BuiltChannel direct_channel(const CMat& h);

// Three-cell average-gain matrix (6x3): serving links from d, every cross
// link from (1-d), both scaled by gain_cal.
RMat three_cell_avg_gains(double d, double theta = 3.5,
                          double gain_cal = 1.21);

// Per-entry CN(0, avg_ij) draw; row-major entry order on a splitmix64
// stream, so a given seed yields the same matrix everywhere.
CMat sample_rayleigh_channel(const RMat& avg, uint64_t seed);

struct EffectiveChannel {
  CMat h_eff;
  RMat e_bar_sq;  // squared residual-error gains (ebar^2 elementwise)
  RMat avg;       // E{|h|^2} carried along for conditional terms
};

EffectiveChannel effective_channel(const CMat& h, const RMat& avg,
                                   double sigma_e2);

// Diagonal residual-CSI noise: entry i = sum_k ebar2[i,k] * p_tot[k].
RVec effective_noise_diag(const RMat& e_bar_sq, const RVec& p_tot);

// One receiver-side model: effective channel + noise helpers that every
// rate expression composes.
class Model {
 public:
  Model(const CMat& h, const RMat& avg, double sigma_e2, double sigma2,
        int n_bs);

  int n_rx() const { return static_cast<int>(he_.rows()); }
  int n_ue() const { return static_cast<int>(he_.cols()); }
  int n_bs_antennas() const { return nbs_; }
  int n_bs() const { return n_rx() / nbs_; }
  double sigma2() const { return s2_; }
  const CMat& h_eff() const { return he_; }
  const RMat& e_bar_sq() const { return eb2_; }

  struct Rows {
    int start, len;
  };
  Rows bs_rows(int m) const { return {m * nbs_, nbs_}; }
  Rows all_rows() const { return {0, n_rx()}; }

  // He[rows] * diag(p) * He[rows]^H
  CMat sig(Rows r, const RVec& p) const;
  // sigma2*I + diag(effective-CSI noise)[rows]; p_tot = total per-UE power.
  CMat noise_base(Rows r, const RVec& p_tot) const;
  // Column of the effective channel restricted to a row block.
  CVec h_col(Rows r, int k) const;

  // Arbitrary row subsets (3-cell active-link sets).
  CMat sig_idx(const std::vector<int>& rows, const RVec& p) const;
  CMat noise_base_idx(const std::vector<int>& rows, const RVec& p_tot) const;

 private:
  CMat he_;
  RMat eb2_;
  double s2_;
  int nbs_;
};

// Convenience: scenario + CSI -> Model (two-cell, N_bs antennas each).
Model make_model(const Scenario2x2& s, const CsiConfig& csi,
                 int n_bs_antennas = 2);

}  // namespace comp
