#include "comp/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace comp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RVec pvec(int n, std::initializer_list<std::pair<int, double>> vals) {
  RVec v = RVec::Zero(n);
  for (auto& [k, val] : vals) v[k] += val;
  return v;
}

const std::array<std::pair<int, int>, 2> kRolePairs = {{{0, 1}, {1, 0}}};

}  // namespace

// ------------------------------------------------------------------ DIS --

std::vector<DisTable> dis_tables(const Model& mod, const SchemeOptions& opt) {
  const bool sc = opt.quant == Quantizer::source_coded;
  std::vector<DisTable> out;
  auto splits = simplex_splits(2, opt.power_steps, 1.0, !opt.spc);
  for (auto [bs_f, bs_o] : kRolePairs) {
    for (auto [u_f, u_o] : kRolePairs) {
      const Model::Rows rf = mod.bs_rows(bs_f), ro = mod.bs_rows(bs_o);
      for (const auto& sp : splits) {
        const double pk = sp[0], pf = sp[1];
        for (double po : {0.0, 1.0}) {
          const RVec ptot = pvec(2, {{u_f, pk + pf}, {u_o, po}});
          const RVec pko = pvec(2, {{u_f, pk}});
          const RVec pfo = pvec(2, {{u_f, pf}});
          const RVec poo = pvec(2, {{u_o, po}});
          const CMat nb_f = mod.noise_base(rf, ptot);
          const CMat nb_o = mod.noise_base(ro, ptot);
          DisTable t;
          t.u_f = u_f;
          t.u_o = u_o;
          // Forwarded part is decoded first at the forwarding BS, so the
          // kept part is bounded with it already removed.
          t.nu_k = log2_det_rate(nb_f + mod.sig(rf, poo), mod.sig(rf, pko));
          t.nu_f_cap = log2_det_rate(nb_f + mod.sig(rf, RVec(pko + poo)),
                                     mod.sig(rf, pfo));
          t.sw = sc ? log2_det_rate(nb_o + mod.sig(ro, RVec(pko + poo)),
                                    mod.sig(ro, pfo))
                    : 0.0;
          t.r2 = log2_det_rate(nb_o + mod.sig(ro, pko), mod.sig(ro, poo));
          out.push_back(t);
        }
      }
    }
  }
  return out;
}

double dis_table_value(const DisTable& t, double beta) {
  return t.nu_k + std::min(t.nu_f_cap, beta + t.sw) + t.r2;
}

RateTuple dis_table_rates(const DisTable& t, double beta, int n_ue) {
  RateTuple r = RVec::Zero(n_ue);
  r[t.u_f] = t.nu_k + std::min(t.nu_f_cap, beta + t.sw);
  r[t.u_o] = t.r2;
  return r;
}

double dis_sum(const Model& mod, double beta, const SchemeOptions& opt,
               std::optional<double> nocoop_fallback) {
  double best =
      nocoop_fallback ? *nocoop_fallback : no_coop_best(mod).sum_rate;
  for (const DisTable& t : dis_tables(mod, opt))
    best = std::max(best, dis_table_value(t, beta));
  return best;
}

// ------------------------------------------------------------------ CIF --

std::vector<CifTable> cif_tables(const Model& mod, const SchemeOptions& opt) {
  (void)opt;
  std::vector<CifTable> out;
  for (auto [bs_f, bs_o] : kRolePairs) {
    for (auto [u_f, u_o] : kRolePairs) {
      const Model::Rows rf = mod.bs_rows(bs_f), ro = mod.bs_rows(bs_o);
      for (double p_f : {0.0, 1.0}) {
        for (double p_o : {0.0, 1.0}) {
          const RVec ptot = pvec(2, {{u_f, p_f}, {u_o, p_o}});
          const RVec pff = pvec(2, {{u_f, p_f}});
          const RVec poo = pvec(2, {{u_o, p_o}});
          CifTable t;
          t.u_f = u_f;
          t.u_o = u_o;
          t.p_f = p_f;
          const CMat nb_f = mod.noise_base(rf, ptot);
          t.noise_o = mod.noise_base(ro, ptot);
          t.sig_o = mod.sig(ro, poo);
          t.r1 = log2_det_rate(nb_f + mod.sig(rf, poo), mod.sig(rf, pff));
          t.h_of = mod.h_col(ro, u_f);
          // Conditional transmit-symbol variance given the decoder's
          // own observation: kappa = 1 / (1 + p_f h^H Phi^-1 h).
          const CMat denom = t.noise_o + t.sig_o;
          Eigen::LLT<CMat> llt(hermitize(denom));
          const CVec x = llt.solve(t.h_of);
          t.kappa = 1.0 / (1.0 + p_f * t.h_of.dot(x).real());
          out.push_back(std::move(t));
        }
      }
    }
  }
  return out;
}

double cif_residual_power(const CifTable& t, double beta, Quantizer q) {
  switch (q) {
    case Quantizer::practical:
      return t.p_f / std::max(std::exp2(beta - 2.0), 1.0);
    case Quantizer::rate_distortion:
      return t.p_f / std::exp2(beta);
    case Quantizer::source_coded:
      return t.p_f * t.kappa / (std::exp2(beta) - 1.0 + t.kappa);
  }
  return t.p_f;
}

double cif_table_value(const CifTable& t, double beta, Quantizer q) {
  const double xi = cif_residual_power(t, beta, q);
  const CMat res = xi * (t.h_of * t.h_of.adjoint());
  return t.r1 + log2_det_rate(t.noise_o + res, t.sig_o);
}

RateTuple cif_table_rates(const CifTable& t, double beta, Quantizer q,
                          int n_ue) {
  const double xi = cif_residual_power(t, beta, q);
  const CMat res = xi * (t.h_of * t.h_of.adjoint());
  RateTuple r = RVec::Zero(n_ue);
  r[t.u_f] = t.r1;
  r[t.u_o] = log2_det_rate(t.noise_o + res, t.sig_o);
  return r;
}

double cif_sum(const Model& mod, double beta, const SchemeOptions& opt,
               std::optional<double> nocoop_fallback) {
  double best =
      nocoop_fallback ? *nocoop_fallback : no_coop_best(mod).sum_rate;
  for (const CifTable& t : cif_tables(mod, opt))
    best = std::max(best, cif_table_value(t, beta, opt.quant));
  return best;
}

// ----------------------------------------------------------------- DASD --

namespace {

template <typename Fn>
void dasd_enumerate(const Model& mod, double beta, const SchemeOptions& opt,
                    Fn&& emit) {
  const int nbs = mod.n_bs_antennas();
  const double ovh =
      opt.quant == Quantizer::practical ? practical_overhead(nbs) : 0.0;
  for (auto [a0, a1] : kRolePairs) {
    const std::array<int, 2> a{a0, a1};
    for (double p0 : {0.0, 1.0}) {
      for (double p1 : {0.0, 1.0}) {
        const RVec ptot = pvec(2, {{0, p0}, {1, p1}});
        std::array<CMat, 2> covs;
        std::array<RVec, 2> evs;
        for (int m = 0; m < 2; ++m) {
          const Model::Rows rm = mod.bs_rows(m);
          covs[m] = mod.noise_base(rm, ptot) + mod.sig(rm, ptot);
        }
        for (int m = 0; m < 2; ++m) {
          if (opt.quant == Quantizer::source_coded) {
            const int mo = 1 - m;
            const Model::Rows rm = mod.bs_rows(m), ro = mod.bs_rows(mo);
            const CMat cross = mod.h_eff().middleRows(rm.start, rm.len) *
                               ptot.asDiagonal() *
                               mod.h_eff().middleRows(ro.start, ro.len)
                                   .adjoint();
            evs[m] =
                quant_evs(conditional_covariance(covs[m], cross, covs[mo]),
                          opt.quant);
          } else {
            evs[m] = quant_evs(covs[m], opt.quant);
          }
        }
        for (int i = 0; i < opt.dasd_split_steps; ++i) {
          const double s = i / (opt.dasd_split_steps - 1.0);
          const std::array<double, 2> budget{s * beta, (1.0 - s) * beta};
          std::array<double, 2> phis;
          for (int m = 0; m < 2; ++m)
            phis[m] = solve_phi(evs[m], budget[m] - ovh);
          RateTuple rates = RVec::Zero(2);
          for (int k = 0; k < 2; ++k) {
            const int m = a[k], mo = 1 - m;
            const RVec pk = pvec(2, {{k, ptot[k]}});
            const RVec pi = ptot - pk;
            if (std::isinf(phis[mo])) {
              const Model::Rows rm = mod.bs_rows(m);
              const CMat noise = mod.noise_base(rm, ptot) + mod.sig(rm, pi);
              rates[k] = log2_det_rate(noise, mod.sig(rm, pk));
            } else {
              const Model::Rows all = mod.all_rows();
              CMat noise = mod.noise_base(all, ptot) + mod.sig(all, pi);
              const Model::Rows ro = mod.bs_rows(mo);
              for (int j = 0; j < ro.len; ++j)
                noise(ro.start + j, ro.start + j) += phis[mo];
              rates[k] = log2_det_rate(noise, mod.sig(all, pk));
            }
          }
          emit(rates);
        }
      }
    }
  }
}

}  // namespace

double dasd_sum(const Model& mod, double beta, const SchemeOptions& opt) {
  double best = -1.0;
  dasd_enumerate(mod, beta, opt, [&](const RateTuple& r) {
    best = std::max(best, r.sum());
  });
  return best;
}

std::vector<RateTuple> dasd_points(const Model& mod, double beta,
                                   const SchemeOptions& opt) {
  std::vector<RateTuple> pts;
  dasd_enumerate(mod, beta, opt,
                 [&](const RateTuple& r) { pts.push_back(r); });
  return pts;
}

// ----------------------------------------------------------------- DASC --

SmallLpResult small_lp_max_sum(
    const std::vector<std::pair<std::vector<int>, double>>& bounds) {
  // Rows: subset-cap constraints then v_i >= 0 (as -v_i <= 0).
  std::vector<Eigen::Vector3d> rows;
  std::vector<double> caps;
  for (const auto& [set, cap] : bounds) {
    Eigen::Vector3d r = Eigen::Vector3d::Zero();
    for (int s : set) r[s] = 1.0;
    rows.push_back(r);
    caps.push_back(std::max(cap, 0.0));
  }
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d r = Eigen::Vector3d::Zero();
    r[i] = -1.0;
    rows.push_back(r);
    caps.push_back(0.0);
  }
  const int n = static_cast<int>(rows.size());
  auto feasible = [&](const Eigen::Vector3d& v) {
    for (int i = 0; i < n; ++i)
      if (rows[i].dot(v) > caps[i] + 1e-9) return false;
    return true;
  };
  SmallLpResult res{0.0, Eigen::Vector3d::Zero(), {}};
  auto consider = [&](const Eigen::Vector3d& v) {
    if (!feasible(v)) return;
    for (const auto& w : res.vertices)
      if ((w - v).cwiseAbs().maxCoeff() < 1e-9) return;
    res.vertices.push_back(v);
    const double s = v.sum();
    if (s > res.max_sum + 1e-12 ||
        (s > res.max_sum - 1e-12 &&
         std::lexicographical_compare(v.data(), v.data() + 3,
                                      res.arg.data(), res.arg.data() + 3))) {
      res.max_sum = std::max(s, res.max_sum);
      res.arg = v;
    }
  };
  consider(Eigen::Vector3d::Zero());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Eigen::Matrix3d A;
        A.row(0) = rows[i];
        A.row(1) = rows[j];
        A.row(2) = rows[k];
        if (std::abs(A.determinant()) < 1e-12) continue;
        Eigen::Vector3d b{caps[i], caps[j], caps[k]};
        consider(A.inverse() * b);
      }
  return res;
}

std::vector<DascCfg> dasc_cfgs(const Model& mod, const SchemeOptions& opt) {
  std::vector<DascCfg> out;
  const int nbs = mod.n_bs_antennas();
  // UE-0-as-split-role allocations; roles mapped onto actual UEs below.
  std::vector<std::vector<double>> su1, su2;
  if (opt.spc) {
    su1 = simplex_splits(3, opt.power_steps);
    su2 = simplex_splits(2, opt.power_steps);
  } else {
    su1 = {{0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}};
    su2 = {{0.0, 1.0}, {0.0, 0.0}};
  }
  for (int bs_q = 0; bs_q < 2; ++bs_q) {
    for (int u_loc = 0; u_loc < 2; ++u_loc) {
      const int bs_j = 1 - bs_q, u2 = 1 - u_loc;
      const Model::Rows rq = mod.bs_rows(bs_q), rj = mod.bs_rows(bs_j);
      for (const auto& s1 : su1) {
        for (const auto& s2 : su2) {
          DascCfg c;
          c.bs_q = bs_q;
          c.u_loc = u_loc;
          c.u2 = u2;
          c.pa = s1[0];
          c.pb = s1[1];
          c.pc = s1[2];
          c.pd = s2[0];
          c.pe = s2[1];
          c.rq_start = rq.start;
          c.rq_len = rq.len;
          const RVec ptot =
              pvec(2, {{u_loc, c.pa + c.pb + c.pc}, {u2, c.pd + c.pe}});
          const RVec p_a = pvec(2, {{u_loc, c.pa}});
          const RVec p_b = pvec(2, {{u_loc, c.pb}});
          const RVec p_c = pvec(2, {{u_loc, c.pc}});
          const RVec p_d = pvec(2, {{u2, c.pd}});
          const RVec p_e = pvec(2, {{u2, c.pe}});
          const CMat nn_q = mod.noise_base(rq, ptot);
          const CMat nn_j = mod.noise_base(rj, ptot);
          const RVec p_ce = p_c + p_e;

          // Local MAC at the RRH-side BS over {a, b, d}; undecoded joint
          // messages {c, e} act as noise there.
          const CMat noise1 = nn_q + mod.sig(rq, p_ce);
          std::vector<std::pair<std::vector<int>, double>> lp_bounds;
          const std::array<RVec, 3> msg{p_a, p_b, p_d};
          const std::vector<std::vector<int>> subsets1 = {
              {0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
          for (const auto& S : subsets1) {
            RVec ps = RVec::Zero(2);
            for (int s : S) ps += msg[s];
            lp_bounds.push_back({S, log2_det_rate(noise1, mod.sig(rq, ps))});
          }
          // Common-message MAC at the decoding BS over {b, d};
          // {a, c, e} undecoded there.
          const CMat noise2 = nn_j + mod.sig(rj, RVec(p_a + p_ce));
          const std::vector<std::vector<int>> subsets2 = {{1}, {2}, {1, 2}};
          for (const auto& S : subsets2) {
            RVec ps = RVec::Zero(2);
            for (int s : S) ps += msg[s];
            lp_bounds.push_back({S, log2_det_rate(noise2, mod.sig(rj, ps))});
          }
          if (c.pa + c.pb + c.pd > 0.0) {
            SmallLpResult lp = small_lp_max_sum(lp_bounds);
            c.v_abd = lp.max_sum;
            c.v_abd_arg = lp.arg;
            c.lp_vertices = std::move(lp.vertices);
          } else {
            c.v_abd = 0.0;
            c.v_abd_arg = Eigen::Vector3d::Zero();
            c.lp_vertices = {Eigen::Vector3d::Zero()};
          }

          // Quantizer acts on the RRH signal after {a, b, d} removal.
          const CMat ybar_q = nn_q + mod.sig(rq, p_ce);
          c.overhead = opt.quant == Quantizer::practical
                           ? practical_overhead(nbs)
                           : 0.0;
          const CVec h_q1 = mod.h_col(rj, u_loc);
          if (opt.quant == Quantizer::source_coded) {
            const CMat ybar_j = nn_j + mod.sig(rj, p_ce) +
                                c.pa * (h_q1 * h_q1.adjoint());
            const CMat cross = mod.h_eff().middleRows(rq.start, rq.len) *
                               p_ce.asDiagonal() *
                               mod.h_eff().middleRows(rj.start, rj.len)
                                   .adjoint();
            c.quant_base_evs = quant_evs(
                conditional_covariance(ybar_q, cross, ybar_j), opt.quant);
          } else {
            c.quant_base_evs = quant_evs(ybar_q, opt.quant);
          }

          // Joint-decode pieces; residual local message of u_loc stays as
          // noise on the decoding BS rows.
          c.noise_j_inf = nn_j + c.pa * (h_q1 * h_q1.adjoint());
          c.sig_j_inf = mod.sig(rj, p_ce);
          c.sig_c_inf = mod.sig(rj, p_c);
          c.sig_e_inf = mod.sig(rj, p_e);
          const Model::Rows all = mod.all_rows();
          CMat fa = CMat::Zero(mod.n_rx(), mod.n_rx());
          fa.block(rj.start, rj.start, rj.len, rj.len) =
              c.pa * (h_q1 * h_q1.adjoint());
          c.noise_full = mod.noise_base(all, ptot) + fa;
          c.sig_full = mod.sig(all, p_ce);
          c.sig_c_full = mod.sig(all, p_c);
          c.sig_e_full = mod.sig(all, p_e);
          out.push_back(std::move(c));
        }
      }
    }
  }
  return out;
}

double dasc_cfg_value(const DascCfg& c, double beta) {
  const double phi = solve_phi(c.quant_base_evs, beta - c.overhead);
  double vj;
  if (std::isinf(phi)) {
    vj = log2_det_rate(c.noise_j_inf, c.sig_j_inf);
  } else {
    CMat noise = c.noise_full;
    for (int i = 0; i < c.rq_len; ++i)
      noise(c.rq_start + i, c.rq_start + i) += phi;
    vj = log2_det_rate(noise, c.sig_full);
  }
  return c.v_abd + vj;
}

RateTuple dasc_cfg_rates(const DascCfg& c, double beta, bool u_loc_first,
                         int n_ue) {
  // Joint MAC over messages c (u_loc) and e (u2); split vj at a SIC corner.
  const double phi = solve_phi(c.quant_base_evs, beta - c.overhead);
  const bool off = std::isinf(phi);
  CMat noise = off ? c.noise_j_inf : c.noise_full;
  if (!off)
    for (int i = 0; i < c.rq_len; ++i)
      noise(c.rq_start + i, c.rq_start + i) += phi;
  const CMat& sig_c = off ? c.sig_c_inf : c.sig_c_full;
  const CMat& sig_e = off ? c.sig_e_inf : c.sig_e_full;
  RateTuple r = RVec::Zero(n_ue);
  r[c.u_loc] = c.v_abd_arg[0] + c.v_abd_arg[1];
  r[c.u2] = c.v_abd_arg[2];
  // Decode order: the message decoded first sees the other as noise.
  if (u_loc_first) {
    r[c.u_loc] += log2_det_rate(noise + sig_e, sig_c);
    r[c.u2] += log2_det_rate(noise, sig_e);
  } else {
    r[c.u2] += log2_det_rate(noise + sig_c, sig_e);
    r[c.u_loc] += log2_det_rate(noise, sig_c);
  }
  return r;
}

double dasc_sum(const Model& mod, double beta, const SchemeOptions& opt) {
  double best = -1.0;
  for (const DascCfg& c : dasc_cfgs(mod, opt))
    best = std::max(best, dasc_cfg_value(c, beta));
  return best;
}

// ------------------------------------------------------------------ FDM --

RateTuple fdm_rates(const Model& mod) {
  const int K = mod.n_ue();
  RateTuple r = RVec::Zero(K);
  for (int k = 0; k < K; ++k) {
    RVec pk = RVec::Zero(K);
    pk[k] = 1.0;
    const Model::Rows rs = mod.bs_rows(k);
    r[k] = 0.5 * log2_det_rate(mod.noise_base(rs, pk), mod.sig(rs, pk));
  }
  return r;
}

RateTuple fdm_enhanced_rates(const Model& mod, double beta,
                             const SchemeOptions& opt) {
  const int K = mod.n_ue();
  RateTuple r = RVec::Zero(K);
  const double ovh = opt.quant == Quantizer::practical
                         ? practical_overhead(mod.n_bs_antennas())
                         : 0.0;
  for (int k = 0; k < K; ++k) {
    RVec pk = RVec::Zero(K);
    pk[k] = 1.0;
    const int m = k, mo = 1 - k;
    const Model::Rows rs = mod.bs_rows(m), ro = mod.bs_rows(mo);
    const CMat nb_s = mod.noise_base(rs, pk);
    if (beta <= 0.0) {
      r[k] = 0.5 * log2_det_rate(nb_s, mod.sig(rs, pk));
      continue;
    }
    const CMat nb_o = mod.noise_base(ro, pk);
    const CMat cov_o = nb_o + mod.sig(ro, pk);
    CMat base = cov_o;
    if (opt.quant == Quantizer::source_coded) {
      const CMat cov_s = nb_s + mod.sig(rs, pk);
      const CMat cross = mod.h_eff().middleRows(ro.start, ro.len) *
                         pk.asDiagonal() *
                         mod.h_eff().middleRows(rs.start, rs.len).adjoint();
      base = conditional_covariance(cov_o, cross, cov_s);
    }
    const double phi = solve_phi(quant_evs(base, opt.quant), beta - ovh);
    if (std::isinf(phi)) {
      r[k] = 0.5 * log2_det_rate(nb_s, mod.sig(rs, pk));
    } else {
      const Model::Rows all = mod.all_rows();
      CMat noise = mod.noise_base(all, pk);
      for (int j = 0; j < ro.len; ++j)
        noise(ro.start + j, ro.start + j) += phi;
      r[k] = 0.5 * log2_det_rate(noise, mod.sig(all, pk));
    }
  }
  return r;
}

double fdm_sum(const Model& mod) { return fdm_rates(mod).sum(); }

double fdm_enhanced_sum(const Model& mod, double beta,
                        const SchemeOptions& opt) {
  return fdm_enhanced_rates(mod, beta, opt).sum();
}

// ---------------------------------------------------------------- misc --

double no_coop_best_single_bs(const Model& mod) {
  const int M = mod.n_bs(), K = mod.n_ue();
  double best = 0.0;
  for (int m = 0; m < M; ++m) {
    std::vector<int> a(K, m);
    for (unsigned mask = 0; mask < (1u << K); ++mask) {
      RVec p(K);
      for (int k = 0; k < K; ++k)
        p[k] = (mask & (1u << (K - 1 - k))) ? 1.0 : 0.0;
      best = std::max(best, no_coop_sum_rate(mod, p, Assignment{a, -1}));
    }
  }
  return best;
}

}  // namespace comp
