#include "comp/schemes3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "comp/linalg.hpp"

namespace comp {

namespace {

std::vector<int> act_indices(const Model& mod, const std::vector<int>& act) {
  std::vector<int> idx;
  const int nbs = mod.n_bs_antennas();
  for (int m : act)
    for (int j = 0; j < nbs; ++j) idx.push_back(m * nbs + j);
  return idx;
}

}  // namespace

double subset_rate(const Model& mod, int bs, const std::vector<int>& ks,
                   const RVec& p_tot) {
  const Model::Rows rows = mod.bs_rows(bs);
  RVec p_dec = RVec::Zero(mod.n_ue());
  RVec p_int = p_tot;
  for (int k : ks) {
    p_dec[k] = p_tot[k];
    p_int[k] = 0.0;
  }
  const CMat noise = mod.noise_base(rows, p_tot) + mod.sig(rows, p_int);
  return log2_det_rate(noise, mod.sig(rows, p_dec));
}

std::vector<Dis3Table> dis3_tables(const Model& mod, Quantizer quant) {
  const RVec p_tot = RVec::Ones(mod.n_ue());
  std::vector<Dis3Table> tabs;
  std::array<int, 3> pi{0, 1, 2};
  std::sort(pi.begin(), pi.end());
  do {
    const std::array<std::vector<int>, 4> s1_opts = {
        std::vector<int>{}, {pi[1]}, {pi[2]}, {pi[1], pi[2]}};
    const std::array<std::vector<int>, 2> s2_opts = {std::vector<int>{},
                                                     {pi[2]}};
    for (const auto& s1 : s1_opts) {
      for (const auto& s2 : s2_opts) {
        auto in = [](const std::vector<int>& v, int x) {
          return std::find(v.begin(), v.end(), x) != v.end();
        };
        // Messages already forwarded to each later stage's BS.
        std::array<std::vector<int>, 3> sub{};
        if (in(s1, pi[1])) sub[pi[1]].push_back(pi[0]);
        if (in(s1, pi[2])) sub[pi[2]].push_back(pi[0]);
        if (in(s2, pi[2])) sub[pi[2]].push_back(pi[1]);
        Dis3Table t;
        for (int i = 0; i < 3; ++i) {
          const int m = pi[i];
          const Model::Rows rows = mod.bs_rows(m);
          RVec p_int = RVec::Ones(mod.n_ue());
          p_int[m] = 0.0;
          for (int ksub : sub[m]) p_int[ksub] = 0.0;
          const CMat noise =
              mod.noise_base(rows, p_tot) + mod.sig(rows, p_int);
          RVec pk = RVec::Zero(mod.n_ue());
          pk[m] = 1.0;
          t.d[i] = log2_det_rate(noise, mod.sig(rows, pk));
          const std::vector<int>& links = i == 0 ? s1
                                          : i == 1 ? s2
                                                   : s2_opts[0];
          for (int tgt : links) {
            t.sw[i].push_back(quant == Quantizer::source_coded
                                  ? subset_rate(mod, tgt, {m}, p_tot)
                                  : 0.0);
          }
        }
        tabs.push_back(std::move(t));
      }
    }
  } while (std::next_permutation(pi.begin(), pi.end()));
  return tabs;
}

double dis3_value(const Dis3Table& t, double beta) {
  // Each link l carrying message k costs max(0, nu_k - sw_kl) bits; raise
  // the cheapest message until the budget runs out. Stage 2 forwards
  // nothing, so its bound is free.
  std::array<double, 3> nu{0.0, 0.0, t.d[2]};
  for (int k = 0; k < 2; ++k) {
    nu[k] = t.sw[k].empty()
                ? t.d[k]
                : std::min(t.d[k], *std::min_element(t.sw[k].begin(),
                                                     t.sw[k].end()));
  }
  double budget = beta;
  while (budget > 1e-12) {
    bool found = false;
    std::tuple<int, int, double> best{0, 0, 0.0};  // (cost, k, next stop)
    for (int k = 0; k < 2; ++k) {
      if (nu[k] >= t.d[k] - 1e-12 || t.sw[k].empty()) continue;
      int cost = 0;
      double nxt = t.d[k];
      for (double s : t.sw[k]) {
        if (s <= nu[k] + 1e-12)
          ++cost;
        else
          nxt = std::min(nxt, s);
      }
      if (cost == 0) cost = 1;
      const std::tuple<int, int, double> cand{cost, k, nxt};
      if (!found || cand < best) {
        best = cand;
        found = true;
      }
    }
    if (!found) break;
    const auto [cost, k, nxt] = best;
    const double step = std::min(nxt - nu[k], budget / cost);
    nu[k] += step;
    budget -= step * cost;
    if (step <= 1e-15) break;
  }
  return nu[0] + nu[1] + nu[2];
}

std::vector<double> dis3_curve(const Model& mod,
                               const std::vector<double>& betas,
                               Quantizer quant, double nocoop_best_value) {
  // The per-message forwarding links carry decoded bits, so the quantizer
  // family only matters through decoder side information.
  const Quantizer q = quant == Quantizer::practical
                          ? Quantizer::rate_distortion
                          : quant;
  const auto tabs = dis3_tables(mod, q);
  std::vector<double> out;
  out.reserve(betas.size());
  for (double b : betas) {
    double best = nocoop_best_value;
    for (const auto& t : tabs) best = std::max(best, dis3_value(t, b));
    out.push_back(best);
  }
  return out;
}

std::vector<double> dasc3_curve(const Model& mod,
                                const std::vector<double>& betas,
                                Quantizer quant, double nocoop_best_value) {
  const RVec p_tot = RVec::Ones(mod.n_ue());
  struct Link {
    int m;
    RVec evs;
  };
  std::array<std::vector<Link>, 3> pre;
  for (int j = 0; j < 3; ++j) {
    const Model::Rows rj = mod.bs_rows(j);
    const CMat covj = mod.noise_base(rj, p_tot) + mod.sig(rj, p_tot);
    for (int m = 0; m < 3; ++m) {
      if (m == j) continue;
      const Model::Rows rm = mod.bs_rows(m);
      const CMat covm = mod.noise_base(rm, p_tot) + mod.sig(rm, p_tot);
      CMat base = covm;
      if (quant == Quantizer::source_coded) {
        const CMat cross =
            mod.h_eff().middleRows(rm.start, rm.len) * p_tot.asDiagonal() *
            mod.h_eff().middleRows(rj.start, rj.len).adjoint();
        base = conditional_covariance(covm, cross, covj);
      }
      pre[j].push_back({m, quant_evs(base, quant)});
    }
  }
  const double ovh = quant == Quantizer::practical
                         ? practical_overhead(mod.n_bs_antennas())
                         : 0.0;
  std::vector<double> out;
  out.reserve(betas.size());
  for (double b : betas) {
    double best = nocoop_best_value;
    for (int j = 0; j < 3; ++j) {
      std::vector<int> act{j};
      std::vector<std::pair<int, double>> phis;
      for (const Link& l : pre[j]) {
        const double phi = solve_phi(l.evs, b / 2.0 - ovh);
        if (!std::isinf(phi)) {
          act.push_back(l.m);
          phis.push_back({l.m, phi});
        }
      }
      std::sort(act.begin(), act.end());
      const auto idx = act_indices(mod, act);
      CMat noise = mod.noise_base_idx(idx, p_tot);
      const int nbs = mod.n_bs_antennas();
      for (size_t ii = 0; ii < act.size(); ++ii) {
        if (act[ii] == j) continue;
        double phi = 0.0;
        for (const auto& [m, ph] : phis)
          if (m == act[ii]) phi = ph;
        for (int a = 0; a < nbs; ++a)
          noise(ii * nbs + a, ii * nbs + a) += phi;
      }
      const CMat sig = mod.sig_idx(idx, p_tot);
      best = std::max(best, log2_det_rate(noise, sig));
    }
    out.push_back(best);
  }
  return out;
}

std::vector<double> dasn3_curve(const Model& mod,
                                const std::vector<double>& betas,
                                Quantizer quant) {
  const RVec p_tot = RVec::Ones(mod.n_ue());
  // No decoder side information at the central unit.
  const Quantizer q = quant == Quantizer::source_coded
                          ? Quantizer::rate_distortion
                          : quant;
  std::array<RVec, 3> evs;
  for (int m = 0; m < 3; ++m) {
    const Model::Rows rm = mod.bs_rows(m);
    evs[m] =
        quant_evs(mod.noise_base(rm, p_tot) + mod.sig(rm, p_tot), q);
  }
  const double ovh = quant == Quantizer::practical
                         ? practical_overhead(mod.n_bs_antennas())
                         : 0.0;
  std::vector<double> out;
  out.reserve(betas.size());
  for (double b : betas) {
    std::array<double, 3> phis;
    std::vector<int> act;
    for (int m = 0; m < 3; ++m) {
      phis[m] = solve_phi(evs[m], b / 3.0 - ovh);
      if (!std::isinf(phis[m])) act.push_back(m);
    }
    if (act.empty()) {
      out.push_back(0.0);
      continue;
    }
    const auto idx = act_indices(mod, act);
    CMat noise = mod.noise_base_idx(idx, p_tot);
    const int nbs = mod.n_bs_antennas();
    for (size_t ii = 0; ii < act.size(); ++ii)
      for (int a = 0; a < nbs; ++a)
        noise(ii * nbs + a, ii * nbs + a) += phis[act[ii]];
    out.push_back(log2_det_rate(noise, mod.sig_idx(idx, p_tot)));
  }
  return out;
}

std::vector<double> fdm3_curve(const Model& mod,
                               const std::vector<double>& betas,
                               Quantizer quant) {
  struct Slot {
    int k;
    RVec pk;
    std::vector<std::pair<int, RVec>> helpers;  // (BS, quantizer spectrum)
  };
  std::vector<Slot> slots;
  for (int k = 0; k < 3; ++k) {
    Slot s;
    s.k = k;
    s.pk = RVec::Zero(mod.n_ue());
    s.pk[k] = 1.0;
    const Model::Rows rk = mod.bs_rows(k);
    const CMat covk = mod.noise_base(rk, s.pk) + mod.sig(rk, s.pk);
    for (int m = 0; m < 3; ++m) {
      if (m == k) continue;
      const Model::Rows rm = mod.bs_rows(m);
      const CMat covm = mod.noise_base(rm, s.pk) + mod.sig(rm, s.pk);
      CMat base = covm;
      if (quant == Quantizer::source_coded) {
        const CMat cross =
            mod.h_eff().middleRows(rm.start, rm.len) * s.pk.asDiagonal() *
            mod.h_eff().middleRows(rk.start, rk.len).adjoint();
        base = conditional_covariance(covm, cross, covk);
      }
      s.helpers.push_back({m, quant_evs(base, quant)});
    }
    slots.push_back(std::move(s));
  }
  const double ovh = quant == Quantizer::practical
                         ? practical_overhead(mod.n_bs_antennas())
                         : 0.0;
  std::vector<double> out;
  out.reserve(betas.size());
  for (double b : betas) {
    double tot = 0.0;
    for (const Slot& s : slots) {
      std::vector<int> act{s.k};
      std::vector<std::pair<int, double>> phis;
      for (const auto& [m, evs] : s.helpers) {
        const double phi = solve_phi(evs, b / 2.0 - ovh);
        if (!std::isinf(phi)) {
          act.push_back(m);
          phis.push_back({m, phi});
        }
      }
      std::sort(act.begin(), act.end());
      const auto idx = act_indices(mod, act);
      CMat noise = mod.noise_base_idx(idx, s.pk);
      const int nbs = mod.n_bs_antennas();
      for (size_t ii = 0; ii < act.size(); ++ii) {
        if (act[ii] == s.k) continue;
        double phi = 0.0;
        for (const auto& [m, ph] : phis)
          if (m == act[ii]) phi = ph;
        for (int a = 0; a < nbs; ++a)
          noise(ii * nbs + a, ii * nbs + a) += phi;
      }
      tot += log2_det_rate(noise, mod.sig_idx(idx, s.pk)) / 3.0;
    }
    out.push_back(tot);
  }
  return out;
}

}  // namespace comp
