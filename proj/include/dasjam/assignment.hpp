#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "dasjam/jammer_stats.hpp"
#include "dasjam/scenario.hpp"

namespace dasjam {

/// Relative slack for "rate below target" tests so that round-off in the
/// running averages does not count as a shortfall.
inline constexpr double kRateTolerance = 1e-9;

constexpr bool falls_short(double rate_bps, double target_bps) {
  return rate_bps < target_bps * (1.0 - kRateTolerance);
}

/// Scheduler-side system constants (everything the BBU is allowed to know).
struct SchedulerParams {
  double subband_bw_hz = 625e3;
  double noise_w = 2.5e-15;
  double epsilon_w_per_bps = 0.1;
  double static_power_w = 1.0;
  double pmc_margin = 0.01;
};

struct SecondUser {
  int user = -1;
  double power_w = 0.0;
  double rate_bps = 0.0;  // predicted
};

/// Extra RRH added by multi-antenna transmission on the first user's subband.
struct ExtraRrh {
  int rrh = -1;
  double power_w = 0.0;
};

/// Allocation of one subband for one timeslot. At most two users, both
/// powered from `rrh` (plus `extra` for multi-antenna transmission).
struct Assignment {
  int subband = -1;
  int rrh = -1;
  int first_user = -1;
  double first_power_w = 0.0;
  double first_rate_bps = 0.0;  // predicted
  std::optional<SecondUser> second;
  std::optional<ExtraRrh> extra;
  TriggerPrediction prediction = TriggerPrediction::UncertainNearP2;
  bool assumed_triggered = false;

  double total_power_w() const {
    return first_power_w + (second ? second->power_w : 0.0) + (extra ? extra->power_w : 0.0);
  }
  /// Power radiated by the primary RRH; what the jammer statistics track.
  double rrh_power_w() const { return first_power_w + (second ? second->power_w : 0.0); }
  double predicted_rate_bps() const { return first_rate_bps + (second ? second->rate_bps : 0.0); }
  bool is_noma() const { return second.has_value(); }
  bool is_mat() const { return extra.has_value(); }
};

struct UserState {
  double target_bps = 0.0;
  double avg_rate_bps = 0.0;
  double avg_power_w = 0.0;
  double required_bps = 0.0;
};

/// Per-user running averages over the horizon.
class UserLedger {
public:
  UserLedger(int num_users, double target_bps);

  /// Sets every user's requirement for 1-based slot i.
  void begin_slot(int slot);
  /// Folds slot i's achieved rates and powers into the averages.
  void end_slot(int slot, const Eigen::VectorXd& achieved_bps, const Eigen::VectorXd& power_w);

  int size() const { return static_cast<int>(users_.size()); }
  const UserState& operator[](int k) const { return users_[static_cast<std::size_t>(k)]; }
  UserState& operator[](int k) { return users_[static_cast<std::size_t>(k)]; }

private:
  std::vector<UserState> users_;
};

/// Everything a scheduler reads for one timeslot.
struct SlotContext {
  const ChannelRealization& channel;
  const JammerStatistics& stats;
  const JamFeedback& feedback;
  const UserLedger& ledger;
  int slot = 1;
  SchedulerParams params;
};

/// Running totals of already placed assignments used for incremental EE.
struct AllocationTotals {
  double rate_bps = 0.0;
  double power_w = 0.0;
  std::vector<bool> rrh_active;

  explicit AllocationTotals(int num_rrhs) : rrh_active(static_cast<std::size_t>(num_rrhs), false) {}
  static AllocationTotals of(const std::vector<Assignment>& assignments, int num_rrhs);

  int active_rrhs() const;
  /// Active RRH count if `rrh` were switched on as well.
  int active_rrhs_with(int rrh) const;
};

/// System EE of (totals + extra rate/power) with `beta` active RRHs.
double incremental_ee(const AllocationTotals& totals, double extra_rate_bps, double extra_power_w,
                      int beta, const SchedulerParams& params);

/// Index into `assignments` of the subband held by user k in its first-user
/// role, or -1.
int find_first_user_assignment(const std::vector<Assignment>& assignments, int k);

}  // namespace dasjam
