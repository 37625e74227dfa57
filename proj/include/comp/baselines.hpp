// Reference regions bracketing every cooperation scheme: the joint-decoding
// ceiling, the per-BS no-cooperation region, and the MRC/IRC receivers.
#pragma once

#include <vector>

#include "comp/allocation.hpp"
#include "comp/channel.hpp"

namespace comp {

// Joint decoding across all antennas, one message per UE.
double mac_sum_rate(const Model& mod, const RVec& p_tot);

// All 2^K - 1 subset bounds of the joint-decoding region.
struct SubsetBound {
  std::vector<int> ue_set;
  double bound;
};
std::vector<SubsetBound> mac_constraints(const Model& mod, const RVec& p_tot);

// Per-BS decoding under a fixed assignment; undecoded UEs are interference.
double no_coop_sum_rate(const Model& mod, const RVec& p_tot,
                        const Assignment& assign);

// Max over all M^K assignments x on/off power vectors.
struct NoCoopResult {
  double sum_rate;
  Assignment assign;
  RVec powers;
};
NoCoopResult no_coop_best(const Model& mod, bool one_per_bs = false);

// Matched filter to the serving-BS subchannel, interference as colored noise.
double mrc_sum_rate(const Model& mod, const RVec& p_tot,
                    const Assignment& assign);

// Per-UE MMSE receiver at the assigned BS (equals the no-coop rate when the
// assignment is one UE per BS).
double irc_sum_rate(const Model& mod, const RVec& p_tot,
                    const Assignment& assign);

// IRC maximized over one-per-BS assignment permutations.
double irc_best_assignment(const Model& mod, const RVec& p_tot);

// min(no_coop + beta, mac): the ceiling no finite-backhaul scheme may cross.
double cut_set_bound(double no_coop, double mac, double beta);

// Weighted no-coop boundary point: max over assignments/powers of w.r,
// returning the achieving rate tuple (for region assembly).
struct WeightedPoint {
  double weighted;
  RVec rates;
};
WeightedPoint no_coop_weighted(const Model& mod, const RVec& weights);
WeightedPoint mac_weighted(const Model& mod, const RVec& weights);

}  // namespace comp
