// Scalar (scaled-identity) quantization-noise levels meeting a backhaul
// budget, and the per-quantizer covariance reductions.
#pragma once

#include <string>

#include "comp/linalg.hpp"

namespace comp {

enum class Quantizer { practical, rate_distortion, source_coded };

Quantizer parse_quantizer(const std::string& s);  // practical|rd|sc
std::string quantizer_name(Quantizer q);

// Noise level phi with sum_i log2(1 + ev_i/phi) = budget.
// +inf when the budget is (effectively) zero or nothing to quantize,
// 0 when even an arbitrarily fine quantizer cannot spend the budget.
double solve_phi(const RVec& evs, double budget);

// Spectrum the budget equation runs over: the plain diagonal for the
// practical per-antenna quantizer, eigenvalues otherwise.
RVec quant_evs(const CMat& cov, Quantizer q);

// Fixed per-link practical-quantizer overhead in bits (2 per antenna).
double practical_overhead(int n_bs_antennas);

}  // namespace comp
