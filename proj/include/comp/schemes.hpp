// Finite-backhaul cooperation schemes for the two-cell topology:
// decode-and-forward (DIS), compressed-interference forwarding (CIF),
// distributed antennas with separate (DAS-D) or central (DAS-C) decoding,
// and the orthogonal-resource FDM comparator.
//
// Every evaluator enumerates roles x power grid once into beta-independent
// tables, then sweeps beta cheaply; *_sum helpers evaluate a single beta.
#pragma once

#include <optional>
#include <vector>

#include "comp/allocation.hpp"
#include "comp/baselines.hpp"
#include "comp/channel.hpp"
#include "comp/quantizer.hpp"

namespace comp {

struct SchemeOptions {
  Quantizer quant = Quantizer::rate_distortion;
  bool spc = true;
  int power_steps = 9;
  int dasd_split_steps = 11;
};

// A candidate operating point: per-UE rates at one enumerated configuration.
using RateTuple = RVec;

// ------------------------------------------------------------------ DIS --
// Decode-and-forward tables; value(beta) = nu_k + min(nu_f_cap, beta+sw) + r2.
struct DisTable {
  int u_f, u_o;            // relayed UE / other UE
  double nu_k, nu_f_cap, sw, r2;
};
std::vector<DisTable> dis_tables(const Model& mod, const SchemeOptions& opt);
double dis_table_value(const DisTable& t, double beta);
RateTuple dis_table_rates(const DisTable& t, double beta, int n_ue);

// Max sum rate incl. the no-coop fallback (full assignment freedom).
double dis_sum(const Model& mod, double beta, const SchemeOptions& opt,
               std::optional<double> nocoop_fallback = std::nullopt);

// ------------------------------------------------------------------ CIF --
struct CifTable {
  int u_f, u_o;
  double r1, p_f, kappa;   // kappa only meaningful for source_coded
  CMat noise_o, sig_o;     // decoding-side pieces; residual added per beta
  CVec h_of;
};
std::vector<CifTable> cif_tables(const Model& mod, const SchemeOptions& opt);
double cif_residual_power(const CifTable& t, double beta, Quantizer q);
double cif_table_value(const CifTable& t, double beta, Quantizer q);
RateTuple cif_table_rates(const CifTable& t, double beta, Quantizer q,
                          int n_ue);
double cif_sum(const Model& mod, double beta, const SchemeOptions& opt,
               std::optional<double> nocoop_fallback = std::nullopt);

// ----------------------------------------------------------------- DASD --
// One decoded UE per BS; backhaul split between the two exchange directions
// scanned on a grid. Collapses to per-BS IRC decoding when a direction's
// budget cannot buy any exchange.
double dasd_sum(const Model& mod, double beta, const SchemeOptions& opt);
std::vector<RateTuple> dasd_points(const Model& mod, double beta,
                                   const SchemeOptions& opt);

// ----------------------------------------------------------------- DASC --
// One BS degrades to a remote radio head and forwards a quantized receive
// signal; the other decodes everything. Local/common message bounds form a
// small LP solved exactly by vertex enumeration.
struct DascCfg {
  int bs_q, u_loc, u2;
  double pa, pb, pc, pd, pe;
  std::vector<Eigen::Vector3d> lp_vertices;  // feasible (va, vb, vd)
  double v_abd;                              // max-sum over those vertices
  Eigen::Vector3d v_abd_arg;
  RVec quant_base_evs;
  double overhead;
  CMat noise_j_inf, sig_j_inf;   // joint decode when the RRH link is off
  CMat noise_full, sig_full;     // full-row pieces; phi enters on rq diag
  CMat sig_c_inf, sig_e_inf;     // per-message signal pieces for SIC corners
  CMat sig_c_full, sig_e_full;
  int rq_start, rq_len;
};
std::vector<DascCfg> dasc_cfgs(const Model& mod, const SchemeOptions& opt);
double dasc_cfg_value(const DascCfg& c, double beta);
// Joint part split into per-UE rates at SIC corner `u_loc_first`.
RateTuple dasc_cfg_rates(const DascCfg& c, double beta, bool u_loc_first,
                         int n_ue);
double dasc_sum(const Model& mod, double beta, const SchemeOptions& opt);

// ------------------------------------------------------------------ FDM --
// Equal time slots at unit power; enhanced variant lets the idle BS forward
// a quantized slot observation with budget beta.
RateTuple fdm_rates(const Model& mod);
RateTuple fdm_enhanced_rates(const Model& mod, double beta,
                             const SchemeOptions& opt);
double fdm_sum(const Model& mod);
double fdm_enhanced_sum(const Model& mod, double beta,
                        const SchemeOptions& opt);

// ---------------------------------------------------------------- misc --
// max sum(v) over v >= 0 subject to sum_{i in S} v_i <= cap per (S, cap);
// exact via vertex enumeration (3 variables). Caps clamp at 0.
struct SmallLpResult {
  double max_sum;
  Eigen::Vector3d arg;
  std::vector<Eigen::Vector3d> vertices;
};
SmallLpResult small_lp_max_sum(
    const std::vector<std::pair<std::vector<int>, double>>& bounds);

// No-coop best restricted to single-BS joint decoding (the beta=0 shape of
// central decoding).
double no_coop_best_single_bs(const Model& mod);

}  // namespace comp
