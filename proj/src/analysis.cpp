#include "comp/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "comp/errors.hpp"

namespace comp {

namespace {

// Upper concave envelope along x, blending the rate tuples of interpolated
// points; input x ascending.
void envelope_blend(const std::vector<double>& x, std::vector<CurvePoint>& pts) {
  const size_t n = x.size();
  std::vector<size_t> hull;
  for (size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      const size_t a = hull[hull.size() - 2], b = hull.back();
      // Keep the middle point while it sits on or above the chord to i.
      if ((pts[b].value - pts[a].value) * (x[i] - x[a]) >=
          (pts[i].value - pts[a].value) * (x[b] - x[a]) - 1e-12)
        break;
      hull.pop_back();
    }
    hull.push_back(i);
  }
  std::vector<CurvePoint> out(pts);
  size_t hi = 0;
  for (size_t i = 0; i < n; ++i) {
    while (hi + 1 < hull.size() && x[hull[hi + 1]] <= x[i]) ++hi;
    double ev;
    CurvePoint blend = pts[hull[hi]];
    if (hi + 1 < hull.size() && x[hull[hi + 1]] > x[hull[hi]] &&
        x[i] > x[hull[hi]]) {
      const size_t a = hull[hi], b = hull[hi + 1];
      const double lam = (x[i] - x[a]) / (x[b] - x[a]);
      ev = pts[a].value + (pts[b].value - pts[a].value) * lam;
      blend.value = ev;
      blend.rates = (1.0 - lam) * pts[a].rates + lam * pts[b].rates;
    } else {
      ev = pts[hull[hi]].value;
    }
    if (ev > pts[i].value) out[i] = blend;
  }
  pts = std::move(out);
}

void running_max_points(std::vector<CurvePoint>& pts) {
  for (size_t i = 1; i < pts.size(); ++i)
    if (pts[i].value < pts[i - 1].value) pts[i] = pts[i - 1];
}

RVec equal_weights(int n_ue) {
  return RVec::Constant(n_ue, 1.0 / n_ue);
}

// Candidate per-UE rate tuples of one scheme at one beta (region assembly).
std::vector<RateTuple> scheme_candidates(
    const Model& mod, SchemeKind k, double beta, const SchemeOptions& opt,
    const std::vector<DisTable>& dis_tabs, const std::vector<CifTable>& cif_tabs,
    const std::vector<DascCfg>& dasc_cs,
    const std::vector<RateTuple>& nocoop_extremes,
    const std::vector<RateTuple>& mac_extremes) {
  std::vector<RateTuple> cands;
  const int K = mod.n_ue();
  switch (k) {
    case SchemeKind::nocoop:
      return nocoop_extremes;
    case SchemeKind::mac:
      return mac_extremes;
    case SchemeKind::dis:
      cands = nocoop_extremes;  // assignment freedom below any table
      for (const auto& t : dis_tabs)
        cands.push_back(dis_table_rates(t, beta, K));
      return cands;
    case SchemeKind::cif:
      cands = nocoop_extremes;
      for (const auto& t : cif_tabs)
        cands.push_back(cif_table_rates(t, beta, opt.quant, K));
      return cands;
    case SchemeKind::dasd:
      return dasd_points(mod, beta, opt);
    case SchemeKind::dasc: {
      for (const DascCfg& c : dasc_cs) {
        for (bool first : {true, false}) {
          // Joint-part SIC corner plus every LP vertex of the local/common
          // message polytope.
          const RateTuple base = dasc_cfg_rates(c, beta, first, K);
          for (const auto& v : c.lp_vertices) {
            RateTuple r = base;
            r[c.u_loc] += (v[0] + v[1]) - (c.v_abd_arg[0] + c.v_abd_arg[1]);
            r[c.u2] += v[2] - c.v_abd_arg[2];
            cands.push_back(r);
          }
        }
      }
      return cands;
    }
    case SchemeKind::fdm:
      cands.push_back(beta <= 0.0 ? fdm_rates(mod)
                                  : fdm_enhanced_rates(mod, beta, opt));
      return cands;
    default:
      throw ConfigError("scheme not supported by the two-cell region");
  }
}

}  // namespace

std::vector<CurvePoint> scheme_curve(const Model& mod, SchemeKind scheme,
                                     const std::vector<double>& betas,
                                     const SchemeOptions& opt, bool envelope) {
  const int K = mod.n_ue();
  std::vector<CurvePoint> pts;
  pts.reserve(betas.size());
  const RVec w = equal_weights(K);
  switch (scheme) {
    case SchemeKind::nocoop: {
      const WeightedPoint p = no_coop_weighted(mod, w);
      for (size_t i = 0; i < betas.size(); ++i)
        pts.push_back({p.rates.sum(), p.rates});
      break;
    }
    case SchemeKind::mac: {
      const WeightedPoint p = mac_weighted(mod, w);
      for (size_t i = 0; i < betas.size(); ++i)
        pts.push_back({p.rates.sum(), p.rates});
      break;
    }
    case SchemeKind::dis: {
      const NoCoopResult nc = no_coop_best(mod);
      const RateTuple nc_rates = no_coop_weighted(mod, w).rates;
      const auto tabs = dis_tables(mod, opt);
      for (double b : betas) {
        CurvePoint best{nc.sum_rate, nc_rates};
        for (const auto& t : tabs) {
          const double v = dis_table_value(t, b);
          if (v > best.value + 1e-12) best = {v, dis_table_rates(t, b, K)};
        }
        pts.push_back(best);
      }
      break;
    }
    case SchemeKind::cif: {
      const NoCoopResult nc = no_coop_best(mod);
      const RateTuple nc_rates = no_coop_weighted(mod, w).rates;
      const auto tabs = cif_tables(mod, opt);
      for (double b : betas) {
        CurvePoint best{nc.sum_rate, nc_rates};
        for (const auto& t : tabs) {
          const double v = cif_table_value(t, b, opt.quant);
          if (v > best.value + 1e-12)
            best = {v, cif_table_rates(t, b, opt.quant, K)};
        }
        pts.push_back(best);
      }
      break;
    }
    case SchemeKind::dasd: {
      for (double b : betas) {
        CurvePoint best{-1.0, RVec::Zero(K)};
        for (const RateTuple& r : dasd_points(mod, b, opt)) {
          const double v = r.sum();
          if (v > best.value + 1e-12) best = {v, r};
        }
        pts.push_back(best);
      }
      break;
    }
    case SchemeKind::dasc: {
      const auto cfgs = dasc_cfgs(mod, opt);
      for (double b : betas) {
        double bv = -1.0;
        const DascCfg* bc = nullptr;
        for (const DascCfg& c : cfgs) {
          const double v = dasc_cfg_value(c, b);
          if (v > bv + 1e-12) {
            bv = v;
            bc = &c;
          }
        }
        pts.push_back({bv, dasc_cfg_rates(*bc, b, true, K)});
      }
      break;
    }
    case SchemeKind::fdm: {
      for (double b : betas) {
        const RateTuple r =
            b <= 0.0 ? fdm_rates(mod) : fdm_enhanced_rates(mod, b, opt);
        pts.push_back({r.sum(), r});
      }
      break;
    }
    default:
      throw ConfigError("scheme not supported by the two-cell curve");
  }
  running_max_points(pts);
  if (envelope) envelope_blend(betas, pts);
  return pts;
}

PerformanceRegion performance_region(const Model& mod,
                                     const std::vector<SchemeKind>& schemes,
                                     const std::vector<double>& betas,
                                     const std::vector<double>& weights,
                                     const SchemeOptions& opt) {
  if (schemes.empty())
    throw ConfigError("scheme_set: region requires a nonempty scheme set");
  if (mod.n_ue() != 2)
    throw ConfigError("region boundary tracing requires the two-cell model");

  // Flat extreme sets reused across schemes and betas.
  std::vector<RateTuple> nc_ext, mac_ext;
  for (double w : weights) {
    const RVec wv = (RVec(2) << w, 1.0 - w).finished();
    nc_ext.push_back(no_coop_weighted(mod, wv).rates);
    mac_ext.push_back(mac_weighted(mod, wv).rates);
  }
  auto dedup = [](std::vector<RateTuple>& v) {
    std::vector<RateTuple> out;
    for (const auto& r : v) {
      bool seen = false;
      for (const auto& o : out)
        if ((o - r).cwiseAbs().maxCoeff() < 1e-9) {
          seen = true;
          break;
        }
      if (!seen) out.push_back(r);
    }
    v = std::move(out);
  };
  dedup(nc_ext);
  dedup(mac_ext);

  // Per-scheme precomputed tables.
  std::vector<DisTable> dis_tabs;
  std::vector<CifTable> cif_tabs;
  std::vector<DascCfg> dasc_cs;
  for (SchemeKind k : schemes) {
    if (k == SchemeKind::dis && dis_tabs.empty())
      dis_tabs = dis_tables(mod, opt);
    if (k == SchemeKind::cif && cif_tabs.empty())
      cif_tabs = cif_tables(mod, opt);
    if (k == SchemeKind::dasc && dasc_cs.empty())
      dasc_cs = dasc_cfgs(mod, opt);
  }

  PerformanceRegion reg;
  reg.betas = betas;
  reg.weights = weights;
  // raw[s][w][b]
  std::vector<std::vector<std::vector<double>>> raw(
      schemes.size(), std::vector<std::vector<double>>(
                          weights.size(), std::vector<double>(betas.size())));
  for (size_t si = 0; si < schemes.size(); ++si) {
    SchemeRegion sr;
    sr.scheme = schemes[si];
    for (size_t bi = 0; bi < betas.size(); ++bi) {
      const auto cands =
          scheme_candidates(mod, schemes[si], betas[bi], opt, dis_tabs,
                            cif_tabs, dasc_cs, nc_ext, mac_ext);
      std::vector<RateTuple> extremes;
      for (size_t wi = 0; wi < weights.size(); ++wi) {
        const double w = weights[wi];
        double best = -1.0;
        const RateTuple* arg = nullptr;
        for (const auto& r : cands) {
          const double v = w * r[0] + (1.0 - w) * r[1];
          if (v > best + 1e-12) {
            best = v;
            arg = &r;
          }
        }
        raw[si][wi][bi] = best;
        if (arg) extremes.push_back(*arg);
      }
      dedup(extremes);
      // Deterministic emission order within a beta: UE-0 rate descending.
      std::sort(extremes.begin(), extremes.end(),
                [](const RateTuple& a, const RateTuple& b) {
                  if (std::abs(a[0] - b[0]) > 1e-12) return a[0] > b[0];
                  return a[1] > b[1];
                });
      for (const auto& r : extremes)
        sr.points.push_back({r, betas[bi], schemes[si]});
    }
    for (size_t wi = 0; wi < weights.size(); ++wi) {
      WeightCurve wc;
      wc.w1 = weights[wi];
      wc.value = raw[si][wi];
      // Nondecreasing in beta, then time-sharing closure.
      for (size_t bi = 1; bi < wc.value.size(); ++bi)
        wc.value[bi] = std::max(wc.value[bi], wc.value[bi - 1]);
      wc.value = upper_concave_envelope(betas, wc.value);
      sr.envelopes.push_back(std::move(wc));
    }
    reg.schemes.push_back(std::move(sr));
  }
  for (size_t wi = 0; wi < weights.size(); ++wi) {
    WeightCurve wc;
    wc.w1 = weights[wi];
    wc.value.assign(betas.size(), 0.0);
    for (size_t bi = 0; bi < betas.size(); ++bi) {
      double m = 0.0;
      for (size_t si = 0; si < schemes.size(); ++si)
        m = std::max(m, raw[si][wi][bi]);
      wc.value[bi] = m;
    }
    for (size_t bi = 1; bi < wc.value.size(); ++bi)
      wc.value[bi] = std::max(wc.value[bi], wc.value[bi - 1]);
    wc.value = upper_concave_envelope(betas, wc.value);
    reg.joint.push_back(std::move(wc));
  }
  return reg;
}

SchemeMap best_scheme_map(const std::vector<double>& d1_grid,
                          const std::vector<double>& d2_grid, double beta,
                          const Scenario2x2& scenario_template,
                          const CsiConfig& csi, const SchemeOptions& opt,
                          int threads) {
  SchemeMap map;
  map.d1_grid = d1_grid;
  map.d2_grid = d2_grid;
  map.schemes = {SchemeKind::dis, SchemeKind::cif, SchemeKind::dasd,
                 SchemeKind::dasc};
  const size_t n = d1_grid.size() * d2_grid.size();
  map.cells.resize(n);
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      const size_t i1 = i / d2_grid.size(), i2 = i % d2_grid.size();
      Scenario2x2 s = scenario_template;
      s.d1 = d1_grid[i1];
      s.d2 = d2_grid[i2];
      const Model mod = make_model(s, csi, 2);
      const double ncb = no_coop_best(mod).sum_rate;
      MapCell cell;
      cell.d1 = s.d1;
      cell.d2 = s.d2;
      const double v_dis = dis_sum(mod, beta, opt, ncb);
      const double v_cif = cif_sum(mod, beta, opt, ncb);
      const double v_dasd = dasd_sum(mod, beta, opt);
      const double v_dasc = dasc_sum(mod, beta, opt);
      cell.sums = {v_dis, v_cif, v_dasd, v_dasc};
      size_t win = 0;
      for (size_t k = 1; k < cell.sums.size(); ++k)
        if (cell.sums[k] > cell.sums[win] + 1e-12) win = k;
      cell.winner = map.schemes[win];
      const double hi = std::max(v_dasc, v_dis), lo = std::min(v_dasc, v_dis);
      cell.flag = hi > 1.1 * lo;
      map.cells[i] = std::move(cell);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return map;
}

std::vector<CodingGainRow> coding_gain_analysis(
    const std::vector<double>& d_values, const Scenario2x2& scenario_template,
    const CsiConfig& csi, const std::vector<double>& betas, int power_steps) {
  std::vector<CodingGainRow> rows;
  struct Variant {
    const char* name;
    SchemeOptions base, var;
  };
  SchemeOptions rd_spc, sc_spc, rd_nospc, sc_nospc;
  rd_spc.power_steps = sc_spc.power_steps = rd_nospc.power_steps =
      sc_nospc.power_steps = power_steps;
  rd_spc.quant = rd_nospc.quant = Quantizer::rate_distortion;
  sc_spc.quant = sc_nospc.quant = Quantizer::source_coded;
  rd_nospc.spc = sc_nospc.spc = false;
  const std::vector<Variant> variants = {
      {"sc", rd_spc, sc_spc}, {"spc", rd_nospc, rd_spc},
      {"both", rd_nospc, sc_spc}};
  // Per-beta evaluator with tables built once per (scheme, options, model).
  struct Evaluator {
    std::vector<DisTable> dis;
    std::vector<DascCfg> dasc;
    double ncb = 0.0;
    bool is_dis = false;
    double operator()(double b) const {
      if (is_dis) {
        double best = ncb;
        for (const auto& t : dis) best = std::max(best, dis_table_value(t, b));
        return best;
      }
      double best = -1.0;
      for (const auto& c : dasc) best = std::max(best, dasc_cfg_value(c, b));
      return best;
    }
  };
  for (SchemeKind scheme : {SchemeKind::dis, SchemeKind::dasc}) {
    for (const Variant& v : variants) {
      for (double d : d_values) {
        Scenario2x2 s = scenario_template;
        s.d1 = s.d2 = d;
        const Model mod = make_model(s, csi, 2);
        auto build = [&](const SchemeOptions& o) {
          Evaluator e;
          e.is_dis = scheme == SchemeKind::dis;
          if (e.is_dis) {
            e.ncb = no_coop_best(mod).sum_rate;
            e.dis = dis_tables(mod, o);
          } else {
            e.dasc = dasc_cfgs(mod, o);
          }
          return e;
        };
        const Evaluator base_eval = build(v.base);
        const Evaluator var_eval = build(v.var);
        double best_gain = -1e300, base_at = 0.0, var_at = 0.0;
        for (double b : betas) {
          const double base = base_eval(b);
          const double var = var_eval(b);
          const double g = base > 0.0 ? 100.0 * (var / base - 1.0) : 0.0;
          if (g > best_gain) {
            best_gain = g;
            base_at = base;
            var_at = var;
          }
        }
        rows.push_back({scheme, v.name, d, base_at, var_at, best_gain});
      }
    }
  }
  return rows;
}

}  // namespace comp
