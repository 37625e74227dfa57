#include "comp/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace comp {

namespace {

// Decoded-set power / interference-power split for one BS.
struct SplitPowers {
  RVec decoded;
  RVec interference;
};

SplitPowers split_powers(const RVec& p_tot, const std::vector<int>& decoded,
                         int n_ue) {
  SplitPowers sp{RVec::Zero(n_ue), p_tot};
  for (int k : decoded) {
    sp.decoded[k] = p_tot[k];
    sp.interference[k] = 0.0;
  }
  return sp;
}

}  // namespace

double mac_sum_rate(const Model& mod, const RVec& p_tot) {
  const Model::Rows all = mod.all_rows();
  return log2_det_rate(mod.noise_base(all, p_tot), mod.sig(all, p_tot));
}

std::vector<SubsetBound> mac_constraints(const Model& mod, const RVec& p_tot) {
  const int K = mod.n_ue();
  const Model::Rows all = mod.all_rows();
  const CMat noise = mod.noise_base(all, p_tot);
  std::vector<SubsetBound> out;
  for (unsigned mask = 1; mask < (1u << K); ++mask) {
    SubsetBound sb;
    RVec p = RVec::Zero(K);
    for (int k = 0; k < K; ++k)
      if (mask & (1u << k)) {
        sb.ue_set.push_back(k);
        p[k] = p_tot[k];
      }
    sb.bound = log2_det_rate(noise, mod.sig(all, p));
    out.push_back(std::move(sb));
  }
  return out;
}

double no_coop_sum_rate(const Model& mod, const RVec& p_tot,
                        const Assignment& assign) {
  double tot = 0.0;
  DecodedSets ds = decoded_message_sets(assign, mod.n_ue(), mod.n_bs());
  for (int m = 0; m < mod.n_bs(); ++m) {
    if (ds.decoded[m].empty()) continue;
    const Model::Rows r = mod.bs_rows(m);
    SplitPowers sp = split_powers(p_tot, ds.decoded[m], mod.n_ue());
    const CMat noise = mod.noise_base(r, p_tot) + mod.sig(r, sp.interference);
    tot += log2_det_rate(noise, mod.sig(r, sp.decoded));
  }
  return tot;
}

NoCoopResult no_coop_best(const Model& mod, bool one_per_bs) {
  const int M = mod.n_bs(), K = mod.n_ue();
  NoCoopResult best{-1.0, {}, RVec::Zero(K)};
  std::vector<std::vector<int>> assigns;
  if (one_per_bs) {
    std::vector<int> perm(M);
    for (int i = 0; i < M; ++i) perm[i] = i;
    // K-permutations of the BS set, lexicographic.
    std::vector<int> sel(K, 0);
    auto rec = [&](auto&& self, int pos, std::vector<int> used) -> void {
      if (pos == K) {
        assigns.push_back(std::vector<int>(sel.begin(), sel.end()));
        return;
      }
      for (int m = 0; m < M; ++m) {
        if (std::find(used.begin(), used.end(), m) != used.end()) continue;
        sel[pos] = m;
        auto u2 = used;
        u2.push_back(m);
        self(self, pos + 1, u2);
      }
    };
    rec(rec, 0, {});
  } else {
    std::vector<int> a(K, 0);
    while (true) {
      assigns.push_back(a);
      int k = K - 1;
      while (k >= 0 && ++a[k] == M) a[k--] = 0;
      if (k < 0) break;
    }
  }
  for (const auto& a : assigns) {
    std::vector<double> pows(K, 0.0);
    for (unsigned mask = 0; mask < (1u << K); ++mask) {
      RVec p(K);
      for (int k = 0; k < K; ++k)
        p[k] = (mask & (1u << (K - 1 - k))) ? 1.0 : 0.0;
      const double v = no_coop_sum_rate(mod, p, Assignment{a, -1});
      if (v > best.sum_rate + 1e-12) {
        best.sum_rate = v;
        best.assign = Assignment{a, -1};
        best.powers = p;
      }
    }
  }
  return best;
}

double mrc_sum_rate(const Model& mod, const RVec& p_tot,
                    const Assignment& assign) {
  double tot = 0.0;
  for (int k = 0; k < mod.n_ue(); ++k) {
    const Model::Rows r = mod.bs_rows(assign.a[k]);
    const CVec hk = mod.h_col(r, k);
    RVec p_int = p_tot;
    p_int[k] = 0.0;
    const CMat phi = mod.noise_base(r, p_tot) + mod.sig(r, p_int);
    const double nh = hk.squaredNorm();
    const double num = p_tot[k] * nh * nh;
    const double den = hk.dot(phi * hk).real();
    tot += std::log2(1.0 + num / den);
  }
  return tot;
}

double irc_sum_rate(const Model& mod, const RVec& p_tot,
                    const Assignment& assign) {
  double tot = 0.0;
  for (int k = 0; k < mod.n_ue(); ++k) {
    const Model::Rows r = mod.bs_rows(assign.a[k]);
    const CVec hk = mod.h_col(r, k);
    RVec p_int = p_tot;
    p_int[k] = 0.0;
    const CMat phi = mod.noise_base(r, p_tot) + mod.sig(r, p_int);
    Eigen::LLT<CMat> llt(hermitize(phi));
    const CVec x = llt.solve(hk);
    const double sinr = p_tot[k] * hk.dot(x).real();
    tot += std::log2(1.0 + sinr);
  }
  return tot;
}

double irc_best_assignment(const Model& mod, const RVec& p_tot) {
  const int M = mod.n_bs(), K = mod.n_ue();
  std::vector<int> bs(M);
  for (int i = 0; i < M; ++i) bs[i] = i;
  double best = -1.0;
  // All one-per-BS K-permutations.
  std::sort(bs.begin(), bs.end());
  std::vector<int> a(K);
  auto rec = [&](auto&& self, int pos, unsigned used) -> void {
    if (pos == K) {
      best = std::max(best, irc_sum_rate(mod, p_tot, Assignment{a, -1}));
      return;
    }
    for (int m = 0; m < M; ++m) {
      if (used & (1u << m)) continue;
      a[pos] = m;
      self(self, pos + 1, used | (1u << m));
    }
  };
  rec(rec, 0, 0u);
  return best;
}

double cut_set_bound(double no_coop, double mac, double beta) {
  return std::min(no_coop + beta, mac);
}

namespace {

// Rate tuple at one SIC corner of a (rows, decoded-set) MAC: UEs decoded in
// `order`, earlier ones see later ones as interference.
RVec sic_corner(const Model& mod, Model::Rows rows, const RVec& p_tot,
                const std::vector<int>& order, const CMat& base_noise) {
  RVec rates = RVec::Zero(mod.n_ue());
  for (size_t i = 0; i < order.size(); ++i) {
    RVec p_later = RVec::Zero(mod.n_ue());
    for (size_t j = i + 1; j < order.size(); ++j)
      p_later[order[j]] = p_tot[order[j]];
    RVec pk = RVec::Zero(mod.n_ue());
    pk[order[i]] = p_tot[order[i]];
    rates[order[i]] =
        log2_det_rate(base_noise + mod.sig(rows, p_later), mod.sig(rows, pk));
  }
  return rates;
}

void all_orders(std::vector<int> items, std::vector<std::vector<int>>& out) {
  std::sort(items.begin(), items.end());
  do {
    out.push_back(items);
  } while (std::next_permutation(items.begin(), items.end()));
}

}  // namespace

WeightedPoint no_coop_weighted(const Model& mod, const RVec& weights) {
  const int M = mod.n_bs(), K = mod.n_ue();
  WeightedPoint best{-1.0, RVec::Zero(K)};
  std::vector<int> a(K, 0);
  while (true) {
    for (unsigned mask = 0; mask < (1u << K); ++mask) {
      RVec p(K);
      for (int k = 0; k < K; ++k)
        p[k] = (mask & (1u << (K - 1 - k))) ? 1.0 : 0.0;
      DecodedSets ds = decoded_message_sets(Assignment{a, -1}, K, M);
      // Corner product across BSs: each BS contributes its own SIC orders.
      std::vector<RVec> partials{RVec::Zero(K)};
      for (int m = 0; m < M; ++m) {
        if (ds.decoded[m].empty()) continue;
        const Model::Rows r = mod.bs_rows(m);
        SplitPowers sp = split_powers(p, ds.decoded[m], K);
        const CMat noise =
            mod.noise_base(r, p) + mod.sig(r, sp.interference);
        std::vector<std::vector<int>> orders;
        all_orders(ds.decoded[m], orders);
        std::vector<RVec> next;
        for (const RVec& acc : partials)
          for (const auto& ord : orders)
            next.push_back(acc + sic_corner(mod, r, sp.decoded, ord, noise));
        partials = std::move(next);
      }
      for (const RVec& rates : partials) {
        const double w = weights.dot(rates);
        if (w > best.weighted + 1e-12) best = {w, rates};
      }
    }
    int k = K - 1;
    while (k >= 0 && ++a[k] == M) a[k--] = 0;
    if (k < 0) break;
  }
  return best;
}

WeightedPoint mac_weighted(const Model& mod, const RVec& weights) {
  const int K = mod.n_ue();
  const Model::Rows all = mod.all_rows();
  WeightedPoint best{-1.0, RVec::Zero(K)};
  for (unsigned mask = 0; mask < (1u << K); ++mask) {
    RVec p(K);
    for (int k = 0; k < K; ++k)
      p[k] = (mask & (1u << (K - 1 - k))) ? 1.0 : 0.0;
    const CMat noise = mod.noise_base(all, p);
    std::vector<int> ues(K);
    for (int k = 0; k < K; ++k) ues[k] = k;
    std::vector<std::vector<int>> orders;
    all_orders(ues, orders);
    for (const auto& ord : orders) {
      const RVec rates = sic_corner(mod, all, p, ord, noise);
      const double w = weights.dot(rates);
      if (w > best.weighted + 1e-12) best = {w, rates};
    }
  }
  return best;
}

}  // namespace comp
