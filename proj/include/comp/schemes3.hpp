#pragma once
// Three-cell (M = K = 3) cooperation strategies used by the Monte-Carlo
// study. All strategies run at unit transmit power with the identity UE/BS
// association unless stated otherwise; sum rates are per channel use.

#include <array>
#include <vector>

#include "comp/channel.hpp"
#include "comp/quantizer.hpp"

namespace comp {

// Rate of UE set `ks` at BS `bs` with every other UE treated as noise.
double subset_rate(const Model& mod, int bs, const std::vector<int>& ks,
                   const RVec& p_tot);

// Decode-and-forward with a decoding order and forwarding plan: stage i's
// BS decodes its own UE after subtracting messages forwarded to it, then may
// forward the decoded message onward. `d` holds per-stage decode bounds in
// stage order mapped back to UE index; `sw` the per-link side-information
// rates (zero unless the quantizer exploits decoder side information).
struct Dis3Table {
  std::array<double, 3> d;
  std::array<std::vector<double>, 3> sw;
};
std::vector<Dis3Table> dis3_tables(const Model& mod, Quantizer quant);

// Exact greedy split of the backhaul budget across the forwarding links.
double dis3_value(const Dis3Table& t, double beta);

std::vector<double> dis3_curve(const Model& mod,
                               const std::vector<double>& betas,
                               Quantizer quant, double nocoop_best_value);

// One BS decodes everything; the other two act as remote radio heads, each
// quantizing its receive signal over half the budget.
std::vector<double> dasc3_curve(const Model& mod,
                                const std::vector<double>& betas,
                                Quantizer quant, double nocoop_best_value);

// All three BSs forward to a central processor (a third of the budget each;
// no decoder side information available there).
std::vector<double> dasn3_curve(const Model& mod,
                                const std::vector<double>& betas,
                                Quantizer quant);

// Orthogonal time slots, one UE active per slot; the two idle BSs forward
// quantized slot observations over half the budget each.
std::vector<double> fdm3_curve(const Model& mod,
                               const std::vector<double>& betas,
                               Quantizer quant);

}  // namespace comp
