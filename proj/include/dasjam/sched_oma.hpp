#pragma once

#include <optional>
#include <vector>

#include "dasjam/assignment.hpp"

namespace dasjam::oma {

/// Single-user evaluation of one (subband, RRH) for a user and rate.
struct Candidate {
  int subband = -1;
  int rrh = -1;
  double power_w = 0.0;
  double rate_bps = 0.0;
  TriggerPrediction prediction = TriggerPrediction::UncertainNearP2;
  bool achieves_required = false;
};

/// Priority order for the greedy loop. Slot 1 ranks by the gap between a
/// user's best and second-best channel amplitude; later slots by rate
/// shortfall, falling back to average power when nobody is short.
int select_next_user(const SlotContext& ctx, const std::vector<int>& unassigned);

/// Power-mode decision for user k on (n, r). Returns nullopt when the
/// required power is not finite.
std::optional<Candidate> evaluate_candidate(const SlotContext& ctx, int k, double required_bps, int n, int r);

/// Best (n, r) for user k among subbands not yet in `current`.
std::optional<Assignment> allocate_subband(const SlotContext& ctx, int k, double required_bps,
                                           const std::vector<Assignment>& current);

/// Greedy OMA allocation: every user with a positive requirement gets at most
/// one subband, subbands are exclusive.
std::vector<Assignment> run_oma_timeslot(const SlotContext& ctx);

}  // namespace dasjam::oma
