#include "dasjam/sched_oma.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "dasjam/phy_math.hpp"

namespace dasjam::oma {

namespace {

double gain_gap(const ChannelRealization& ch, int k) {
  std::vector<double> gains;
  gains.reserve(static_cast<std::size_t>(ch.num_subbands * ch.num_rrhs));
  for (int r = 0; r < ch.num_rrhs; ++r) {
    for (int n = 0; n < ch.num_subbands; ++n) gains.push_back(ch.h(k, n, r));
  }
  if (gains.size() < 2) return gains.empty() ? 0.0 : gains.front();
  std::partial_sort(gains.begin(), gains.begin() + 2, gains.end(), std::greater<>());
  return gains[0] - gains[1];
}

// argmax over `users` of score, ties to the lowest user index.
template <typename Score>
int argmax_user(const std::vector<int>& users, Score score) {
  int best = -1;
  double best_score = 0.0;
  for (int k : users) {
    const double s = score(k);
    if (best < 0 || s > best_score || (s == best_score && k < best)) {
      best = k;
      best_score = s;
    }
  }
  return best;
}

}  // namespace

int select_next_user(const SlotContext& ctx, const std::vector<int>& unassigned) {
  if (unassigned.empty()) return -1;
  if (ctx.slot <= 1) {
    return argmax_user(unassigned, [&](int k) { return gain_gap(ctx.channel, k); });
  }
  std::vector<int> short_users;
  for (int k : unassigned) {
    if (falls_short(ctx.ledger[k].avg_rate_bps, ctx.ledger[k].target_bps)) short_users.push_back(k);
  }
  if (short_users.empty()) {
    return argmax_user(unassigned, [&](int k) { return ctx.ledger[k].avg_power_w; });
  }
  return argmax_user(short_users,
                     [&](int k) { return ctx.ledger[k].target_bps - ctx.ledger[k].avg_rate_bps; });
}

std::optional<Candidate> evaluate_candidate(const SlotContext& ctx, int k, double required_bps, int n, int r) {
  const auto& ch = ctx.channel;
  const auto& p = ctx.params;
  const double h_sq = ch.h_sq(k, n, r);
  const double jam_free = phy::power_for_rate_single(required_bps, h_sq, p.noise_w, p.subband_bw_hz);
  if (!std::isfinite(jam_free)) return std::nullopt;

  Candidate c{n, r, jam_free, required_bps, ctx.stats.predict(n, r, jam_free), true};
  switch (c.prediction) {
    case TriggerPrediction::WillNotTrigger:
      break;
    case TriggerPrediction::WillTrigger:
    case TriggerPrediction::UncertainNearP2:
      c.power_w = phy::power_for_rate_single(required_bps, h_sq, p.noise_w + ctx.feedback.estimate(k, n),
                                             p.subband_bw_hz);
      break;
    case TriggerPrediction::UncertainNearP1:
      // p1 is known not to trigger, so the rate is the jam-free one.
      c.power_w = ctx.stats.p1(n, r);
      c.rate_bps = phy::rate_single({c.power_w, h_sq, p.noise_w, 0.0, false}, p.subband_bw_hz);
      c.achieves_required = false;
      break;
  }
  if (!std::isfinite(c.power_w)) return std::nullopt;
  return c;
}

std::optional<Assignment> allocate_subband(const SlotContext& ctx, int k, double required_bps,
                                           const std::vector<Assignment>& current) {
  if (required_bps <= 0.0) return std::nullopt;
  const auto& ch = ctx.channel;
  std::vector<bool> taken(static_cast<std::size_t>(ch.num_subbands), false);
  for (const auto& a : current) taken[static_cast<std::size_t>(a.subband)] = true;
  const auto totals = AllocationTotals::of(current, ch.num_rrhs);

  std::optional<Candidate> best_achiever;
  double best_ee = 0.0;
  std::optional<Candidate> best_rate;
  for (int n = 0; n < ch.num_subbands; ++n) {
    if (taken[static_cast<std::size_t>(n)]) continue;
    for (int r = 0; r < ch.num_rrhs; ++r) {
      auto c = evaluate_candidate(ctx, k, required_bps, n, r);
      if (!c) continue;
      if (c->achieves_required) {
        const double ee = incremental_ee(totals, c->rate_bps, c->power_w, totals.active_rrhs_with(r), ctx.params);
        if (!best_achiever || ee > best_ee) {
          best_achiever = c;
          best_ee = ee;
        }
      } else if (!best_rate || c->rate_bps > best_rate->rate_bps) {
        best_rate = c;
      }
    }
  }

  const auto& chosen = best_achiever ? best_achiever : best_rate;
  // A zero-rate pick would only burn static power on an idle RRH.
  if (!chosen || chosen->rate_bps <= 0.0) return std::nullopt;

  Assignment a;
  a.subband = chosen->subband;
  a.rrh = chosen->rrh;
  a.first_user = k;
  a.first_power_w = chosen->power_w;
  a.first_rate_bps = chosen->rate_bps;
  a.prediction = chosen->prediction;
  a.assumed_triggered = assumes_triggered(chosen->prediction);
  return a;
}

std::vector<Assignment> run_oma_timeslot(const SlotContext& ctx) {
  const int users = ctx.channel.num_users;
  if (users > ctx.channel.num_subbands) throw InvalidConfig("more users than subbands");
  std::vector<int> pending;
  for (int k = 0; k < users; ++k) {
    if (ctx.ledger[k].required_bps > 0.0) pending.push_back(k);
  }
  std::vector<Assignment> out;
  while (!pending.empty()) {
    const int k = select_next_user(ctx, pending);
    pending.erase(std::find(pending.begin(), pending.end(), k));
    if (auto a = allocate_subband(ctx, k, ctx.ledger[k].required_bps, out)) out.push_back(*a);
  }
  return out;
}

}  // namespace dasjam::oma
