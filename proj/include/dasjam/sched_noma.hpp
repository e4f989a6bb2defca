#pragma once

#include <optional>
#include <vector>

#include "dasjam/assignment.hpp"

namespace dasjam::noma {

/// Tentative pairing of a second user onto a singly occupied subband.
struct PairingCandidate {
  int assignment_index = -1;
  int subband = -1;
  double first_power_w = 0.0;   // possibly re-derived to hold the first user's rate under jamming
  double first_rate_bps = 0.0;  // predicted under `assumed_triggered`
  double second_power_w = 0.0;
  double second_rate_bps = 0.0;
  TriggerPrediction prediction = TriggerPrediction::UncertainNearP2;  // of the subband's total power
  bool assumed_triggered = false;
  bool fills_deficit = false;
  double ee = 0.0;  // system EE if this candidate is applied
};

/// Candidate subbands for second user k2 among `sole` (indices into
/// `assignments` carrying a single user). Enforces SIC ordering and the power
/// multiplexing condition under the outcome each candidate assumes.
std::vector<PairingCandidate> build_candidates(const SlotContext& ctx, int k2, double deficit_bps,
                                               const std::vector<int>& sole,
                                               const std::vector<Assignment>& assignments);

/// Deficit-filling candidate with the best EE, else the one giving k2 the
/// highest rate. nullopt when there is no candidate.
std::optional<PairingCandidate> pair_user(const std::vector<PairingCandidate>& candidates);

/// Writes a chosen pairing into its assignment.
void apply_pairing(std::vector<Assignment>& assignments, int k2, const PairingCandidate& c);

/// OMA phase followed by greedy second-user pairing.
std::vector<Assignment> run_noma_timeslot(const SlotContext& ctx);

}  // namespace dasjam::noma
