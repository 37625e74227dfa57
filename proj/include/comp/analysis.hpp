#pragma once
// Result assembly: sum-rate-vs-backhaul curves, weighted rate regions with
// time-sharing closure, the best-scheme location map, and the quantizer /
// superposition gain table.

#include <string>
#include <vector>

#include "comp/allocation.hpp"
#include "comp/baselines.hpp"
#include "comp/channel.hpp"
#include "comp/schemes.hpp"

namespace comp {

struct RateBackhaulPoint {
  RateTuple rates;
  double beta;
  SchemeKind scheme;
};

struct CurvePoint {
  double value;
  RateTuple rates;  // sums to `value`; time-shared rows blend endpoints
};

// Best sum rate per beta for one scheme, nondecreasing; with `envelope`
// the upper concave envelope along beta (time-sharing) is applied and the
// rate tuples of interpolated points are blended accordingly.
std::vector<CurvePoint> scheme_curve(const Model& mod, SchemeKind scheme,
                                     const std::vector<double>& betas,
                                     const SchemeOptions& opt,
                                     bool envelope = true);

// Weighted boundary value along beta for a fixed weight on UE 0.
struct WeightCurve {
  double w1;
  std::vector<double> value;
};

struct SchemeRegion {
  SchemeKind scheme;
  std::vector<RateBackhaulPoint> points;  // per-weight extreme points
  std::vector<WeightCurve> envelopes;     // per weight, enveloped along beta
};

struct PerformanceRegion {
  std::vector<double> betas;
  std::vector<double> weights;
  std::vector<SchemeRegion> schemes;
  std::vector<WeightCurve> joint;  // envelope of the across-scheme max
};

PerformanceRegion performance_region(const Model& mod,
                                     const std::vector<SchemeKind>& schemes,
                                     const std::vector<double>& betas,
                                     const std::vector<double>& weights,
                                     const SchemeOptions& opt);

// Winner map over UE positions at one backhaul budget. The adaptation flag
// marks cells where switching between the central and message-forwarding
// schemes is worth more than 10% over committing to either one.
struct MapCell {
  double d1, d2;
  SchemeKind winner;
  bool flag;
  std::vector<double> sums;  // aligned with SchemeMap::schemes
};

struct SchemeMap {
  std::vector<double> d1_grid, d2_grid;
  std::vector<SchemeKind> schemes;
  std::vector<MapCell> cells;  // d1-major, then d2 ascending
};

SchemeMap best_scheme_map(const std::vector<double>& d1_grid,
                          const std::vector<double>& d2_grid, double beta,
                          const Scenario2x2& scenario_template,
                          const CsiConfig& csi, const SchemeOptions& opt,
                          int threads = 1);

// Max-over-beta relative gain of source coding / superposition coding /
// both, per scheme and UE distance (symmetric d1 = d2 = d).
struct CodingGainRow {
  SchemeKind scheme;
  std::string variant;  // "sc", "spc", or "both"
  double d;
  double base_best;
  double variant_best;
  double gain_pct;
};

std::vector<CodingGainRow> coding_gain_analysis(
    const std::vector<double>& d_values, const Scenario2x2& scenario_template,
    const CsiConfig& csi, const std::vector<double>& betas, int power_steps);

}  // namespace comp
