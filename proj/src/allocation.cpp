#include "comp/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "comp/errors.hpp"

namespace comp {

RVec subset_power_diag(const PowerAllocation& alloc,
                       const std::vector<MessageId>& subset, int n_ue) {
  RVec p = RVec::Zero(n_ue);
  for (size_t i = 0; i < alloc.messages.size(); ++i)
    for (const MessageId& m : subset)
      if (alloc.messages[i] == m) p[m.ue] += alloc.powers[i];
  return p;
}

DecodedSets decoded_message_sets(const Assignment& assign, int n_ue,
                                 int n_bs) {
  DecodedSets out;
  out.decoded.resize(n_bs);
  out.not_decoded.resize(n_bs);
  for (int m = 0; m < n_bs; ++m)
    for (int k = 0; k < n_ue; ++k)
      (assign.a[k] == m ? out.decoded : out.not_decoded)[m].push_back(k);
  return out;
}

std::vector<std::vector<double>> simplex_splits(int q, int n_steps,
                                                double p_max,
                                                bool corners_only) {
  std::vector<std::vector<double>> out;
  if (corners_only || q == 1) {
    for (int i = 0; i < q; ++i) {
      std::vector<double> v(q, 0.0);
      v[i] = p_max;
      out.push_back(v);
    }
  } else {
    // Compositions of (n_steps - 1) into q parts, lexicographic.
    std::vector<int> comp(q, 0);
    auto emit = [&](auto&& self, int pos, int left) -> void {
      if (pos == q - 1) {
        comp[pos] = left;
        std::vector<double> v(q);
        for (int i = 0; i < q; ++i)
          v[i] = p_max * comp[i] / static_cast<double>(n_steps - 1);
        out.push_back(v);
        return;
      }
      for (int c = 0; c <= left; ++c) {
        comp[pos] = c;
        self(self, pos + 1, left - c);
      }
    };
    emit(emit, 0, n_steps - 1);
  }
  out.push_back(std::vector<double>(q, 0.0));
  return out;
}

namespace {

// Per-UE message sets. UE 0 plays the split role in DIS (relayed UE) and
// DASC (the RRH-side UE); role permutations live in the scheme evaluators.
std::vector<std::vector<MessageId>> message_structure(SchemeKind scheme,
                                                      int n_ue,
                                                      bool spc_enabled) {
  std::vector<std::vector<MessageId>> per_ue(n_ue);
  switch (scheme) {
    case SchemeKind::dis:
      per_ue[0] = {{0, MsgTag::dis_kept}, {0, MsgTag::dis_forwarded}};
      for (int k = 1; k < n_ue; ++k) per_ue[k] = {{k, MsgTag::single}};
      break;
    case SchemeKind::dasc:
      if (spc_enabled) {
        per_ue[0] = {{0, MsgTag::dasc_local},
                     {0, MsgTag::dasc_common},
                     {0, MsgTag::dasc_joint}};
        for (int k = 1; k < n_ue; ++k)
          per_ue[k] = {{k, MsgTag::dasc_common}, {k, MsgTag::dasc_joint}};
      } else {
        // Superposition off: only the jointly decoded message survives.
        for (int k = 0; k < n_ue; ++k) per_ue[k] = {{k, MsgTag::dasc_joint}};
      }
      break;
    default:
      for (int k = 0; k < n_ue; ++k) per_ue[k] = {{k, MsgTag::single}};
      break;
  }
  return per_ue;
}

}  // namespace

std::vector<PowerAllocation> power_grid(int n_steps, SchemeKind scheme,
                                        const std::vector<double>& p_max,
                                        bool spc_enabled) {
  if (n_steps < 2) throw ConfigError("power_grid: n_steps must be >= 2");
  const int n_ue = static_cast<int>(p_max.size());
  auto structure = message_structure(scheme, n_ue, spc_enabled);
  // Multi-message UEs get the simplex grid when superposition is on and
  // just the one-hot corners when it is off (all-or-nothing splits).
  std::vector<std::vector<std::vector<double>>> per_ue;
  for (int k = 0; k < n_ue; ++k) {
    const int q = static_cast<int>(structure[k].size());
    per_ue.push_back(
        simplex_splits(q, n_steps, p_max[k], q == 1 || !spc_enabled));
  }
  std::vector<PowerAllocation> out;
  std::vector<size_t> idx(n_ue, 0);
  while (true) {
    PowerAllocation alloc;
    alloc.p_max = p_max;
    for (int k = 0; k < n_ue; ++k) {
      const auto& split = per_ue[k][idx[k]];
      for (size_t j = 0; j < structure[k].size(); ++j) {
        alloc.messages.push_back(structure[k][j]);
        alloc.powers.push_back(split[j]);
      }
    }
    out.push_back(std::move(alloc));
    int k = n_ue - 1;
    while (k >= 0 && ++idx[k] == per_ue[k].size()) idx[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

std::vector<double> weight_grid(int n_points) {
  std::vector<double> w(n_points);
  for (int i = 0; i < n_points; ++i)
    w[i] = static_cast<double>(i) / (n_points - 1);
  return w;
}

std::vector<double> parse_beta_grid(const std::string& text) {
  double start = 0, step = 0, end = 0;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  if (!(is >> start >> c1 >> step >> c2 >> end) || c1 != ':' || c2 != ':' ||
      !(is >> std::ws).eof())
    throw ConfigError("beta grid must be start:step:end, got '" + text + "'");
  if (step <= 0.0 || end < start || start < 0.0)
    throw ConfigError("beta grid requires start >= 0, step > 0, end >= start");
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double b = start + i * step;
    if (b > end + 1e-9) break;
    grid.push_back(std::min(b, end));
  }
  return grid;
}

std::string scheme_name(SchemeKind k) {
  switch (k) {
    case SchemeKind::mac: return "mac";
    case SchemeKind::nocoop: return "nocoop";
    case SchemeKind::dis: return "dis";
    case SchemeKind::cif: return "cif";
    case SchemeKind::dasd: return "dasd";
    case SchemeKind::dasc: return "dasc";
    case SchemeKind::fdm: return "fdm";
    case SchemeKind::dasn: return "dasn";
  }
  return "?";
}

}  // namespace comp
