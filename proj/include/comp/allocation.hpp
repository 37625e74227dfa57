// Message structures, per-message power allocations, BS-UE assignments and
// the enumeration grids realizing the unions over transmit strategies.
#pragma once

#include <string>
#include <vector>

#include "comp/linalg.hpp"

namespace comp {

enum class MsgTag {
  single,         // one message per UE (MAC / no-coop / CIF)
  dis_kept,       // decode-and-forward: part kept local
  dis_forwarded,  // decode-and-forward: part forwarded over backhaul
  dasc_local,     // central decoding: local-only message at the RRH-side BS
  dasc_common,    // central decoding: message decoded at both BSs
  dasc_joint      // central decoding: message decoded jointly only
};

struct MessageId {
  int ue;
  MsgTag tag;
  bool operator==(const MessageId&) const = default;
};

struct PowerAllocation {
  std::vector<MessageId> messages;
  std::vector<double> powers;   // aligned with messages
  std::vector<double> p_max;    // per-UE cap
};

struct Assignment {
  std::vector<int> a;       // serving BS per UE
  int coop_direction = -1;  // forwarding BS for directed schemes, -1 if n/a
};

// Diagonal K x K matrix of per-UE power summed over a message subset.
RVec subset_power_diag(const PowerAllocation& alloc,
                       const std::vector<MessageId>& subset, int n_ue);

// Per-BS partition (decoded, not decoded) of single-per-UE messages.
struct DecodedSets {
  std::vector<std::vector<int>> decoded;      // UE indices per BS
  std::vector<std::vector<int>> not_decoded;
};
DecodedSets decoded_message_sets(const Assignment& assign, int n_ue, int n_bs);

// Simplex-face grid over q messages summing to p_max (n_steps points per
// dimension, corners included) plus the all-zero point. corners_only
// degenerates to the one-hot corners + zero — the single-message grid.
std::vector<std::vector<double>> simplex_splits(int q, int n_steps,
                                                double p_max = 1.0,
                                                bool corners_only = false);

// Scheme kinds used to pick the per-UE message structure.
enum class SchemeKind { mac, nocoop, dis, cif, dasd, dasc, fdm, dasn };

// Full per-UE power grid for a scheme; every emitted allocation respects
// the per-UE cap exactly.
std::vector<PowerAllocation> power_grid(int n_steps, SchemeKind scheme,
                                        const std::vector<double>& p_max,
                                        bool spc_enabled);

// Uniform weight grid over [0,1] for boundary scalarization.
std::vector<double> weight_grid(int n_points = 33);

// "start:step:end" inclusive; validates start <= end, step > 0.
std::vector<double> parse_beta_grid(const std::string& text);

std::string scheme_name(SchemeKind k);

}  // namespace comp
