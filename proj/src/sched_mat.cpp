#include "dasjam/sched_mat.hpp"

#include <cmath>

#include "dasjam/phy_math.hpp"
#include "dasjam/sched_oma.hpp"

namespace dasjam::mat {

std::optional<Assignment> augment_outage_user(const SlotContext& ctx, const std::vector<Assignment>& assignments,
                                              int index) {
  const auto& ch = ctx.channel;
  const auto& p = ctx.params;
  const auto& base = assignments[static_cast<std::size_t>(index)];
  const int k = base.first_user;
  const int n = base.subband;
  const int r1 = base.rrh;
  const double required = ctx.ledger[k].required_bps;
  // Worst case: the jammer fires on this subband.
  const double jam = ctx.feedback.estimate(k, n);
  const auto totals = AllocationTotals::of(assignments, ch.num_rrhs);

  std::optional<Assignment> best;
  double best_ee = 0.0;
  for (int r2 = 0; r2 < ch.num_rrhs; ++r2) {
    if (r2 == r1) continue;
    const double p2 = phy::mat_power(required, base.first_power_w, ch.h_sq(k, n, r1), ch.h_sq(k, n, r2),
                                     p.noise_w, jam, p.subband_bw_hz);
    if (!std::isfinite(p2)) continue;
    const double rate = phy::mat_rate(base.first_power_w, ch.h_sq(k, n, r1), p2, ch.h_sq(k, n, r2), p.noise_w,
                                      jam, p.subband_bw_hz);
    const double ee = incremental_ee(totals, rate - base.first_rate_bps, p2, totals.active_rrhs_with(r2), p);
    if (!best || ee > best_ee) {
      best = base;
      best->extra = ExtraRrh{r2, p2};
      best->first_rate_bps = rate;
      best->prediction = TriggerPrediction::UncertainNearP2;
      best->assumed_triggered = true;
      best_ee = ee;
    }
  }
  return best;
}

bool in_outage(const SlotContext& ctx, const Assignment& a) {
  const auto& u = ctx.ledger[a.first_user];
  const bool behind = ctx.slot > 1 && falls_short(u.avg_rate_bps, u.target_bps);
  return behind || falls_short(a.first_rate_bps, u.required_bps);
}

std::vector<Assignment> run_mat_timeslot(const SlotContext& ctx) {
  auto assignments = oma::run_oma_timeslot(ctx);
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    const auto& a = assignments[i];
    if (!in_outage(ctx, a)) continue;
    if (auto augmented = augment_outage_user(ctx, assignments, static_cast<int>(i))) assignments[i] = *augmented;
  }
  return assignments;
}

}  // namespace dasjam::mat
