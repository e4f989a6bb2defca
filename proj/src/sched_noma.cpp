#include "dasjam/sched_noma.hpp"

#include <algorithm>
#include <cmath>

#include "dasjam/phy_math.hpp"
#include "dasjam/sched_oma.hpp"

namespace dasjam::noma {

namespace {

struct Powers {
  double first = 0.0;
  double second = 0.0;
};

struct PairLink {
  double h1 = 0.0, h2 = 0.0;  // amplitudes on the shared (n, r)
  double jam1 = 0.0, jam2 = 0.0;  // estimated perceived jamming
  double h1_sq() const { return h1 * h1; }
  double h2_sq() const { return h2 * h2; }
  // The scheduler only knows P_J g^2; P_J cancels in the SIC test. With no
  // report for either user the planned jam is zero and the jam-free ordering
  // applies.
  bool sic(bool jammed) const {
    const bool informed = jammed && (jam1 > 0.0 || jam2 > 0.0);
    return phy::sic_feasible(h1, h2, std::sqrt(jam1), std::sqrt(jam2), informed);
  }
};

// Powers when the jammer is expected to fire: the first user is re-powered to
// keep its OMA-phase rate, then the second user is sized and the jammed PMC
// enforced.
std::optional<Powers> jammed_powers(const PairLink& l, double first_rate, double deficit,
                                    const SchedulerParams& p) {
  if (!l.sic(true)) return std::nullopt;
  Powers out;
  out.first = phy::power_for_rate_single(first_rate, l.h1_sq(), p.noise_w + l.jam1, p.subband_bw_hz);
  out.second = phy::power_for_rate_second(deficit, out.first, l.h2_sq(), p.noise_w, l.jam2, true, p.subband_bw_hz);
  out.second = phy::enforce_pmc(out.first, out.second, l.h1_sq(), l.jam1, true, p.pmc_margin);
  return out;
}

}  // namespace

std::vector<PairingCandidate> build_candidates(const SlotContext& ctx, int k2, double deficit_bps,
                                               const std::vector<int>& sole,
                                               const std::vector<Assignment>& assignments) {
  const auto& ch = ctx.channel;
  const auto& p = ctx.params;
  const auto totals = AllocationTotals::of(assignments, ch.num_rrhs);
  std::vector<PairingCandidate> out;

  for (int idx : sole) {
    const auto& a = assignments[static_cast<std::size_t>(idx)];
    if (a.first_user == k2 || a.second || a.extra) continue;
    const int n = a.subband;
    const int r = a.rrh;
    const int k1 = a.first_user;
    const PairLink link{ch.h(k1, n, r), ch.h(k2, n, r), ctx.feedback.estimate(k1, n),
                        ctx.feedback.estimate(k2, n)};

    // Tentative second-user power under the first user's assumed outcome.
    Powers pw{a.first_power_w, 0.0};
    if (a.assumed_triggered) {
      if (!link.sic(true)) continue;
      pw.second = phy::power_for_rate_second(deficit_bps, pw.first, link.h2_sq(), p.noise_w, link.jam2, true,
                                             p.subband_bw_hz);
      pw.second = phy::enforce_pmc(pw.first, pw.second, link.h1_sq(), link.jam1, true, p.pmc_margin);
    } else {
      if (!link.sic(false)) continue;
      pw.second = phy::power_for_rate_second(deficit_bps, pw.first, link.h2_sq(), p.noise_w, 0.0, false,
                                             p.subband_bw_hz);
      pw.second = phy::enforce_pmc(pw.first, pw.second, link.h1_sq(), 0.0, false, p.pmc_margin);
    }
    if (!std::isfinite(pw.second)) continue;

    // The added power may push the subband across the jammer's threshold.
    const auto prediction = ctx.stats.predict(n, r, pw.first + pw.second);
    bool jammed = a.assumed_triggered;
    switch (prediction) {
      case TriggerPrediction::WillNotTrigger:
        jammed = false;
        break;
      case TriggerPrediction::WillTrigger:
      case TriggerPrediction::UncertainNearP2: {
        auto j = jammed_powers(link, a.first_rate_bps, deficit_bps, p);
        if (!j) continue;
        pw = *j;
        jammed = true;
        break;
      }
      case TriggerPrediction::UncertainNearP1: {
        // Conservatory: shrink the second user so the total sits on p1.
        pw.second = ctx.stats.p1(n, r) - pw.first;
        jammed = false;
        if (!(pw.second > 0.0) || !link.sic(false) ||
            !phy::pmc_satisfied(pw.first, pw.second, link.h1_sq(), 0.0, false)) {
          continue;
        }
        break;
      }
    }
    if (!std::isfinite(pw.first) || !std::isfinite(pw.second)) continue;

    PairingCandidate c;
    c.assignment_index = idx;
    c.subband = n;
    c.first_power_w = pw.first;
    c.second_power_w = pw.second;
    c.prediction = prediction;
    c.assumed_triggered = jammed;
    c.first_rate_bps =
        phy::rate_single({pw.first, link.h1_sq(), p.noise_w, link.jam1, jammed}, p.subband_bw_hz);
    c.second_rate_bps = phy::rate_second_user(pw.first, pw.second, link.h2_sq(), p.noise_w, link.jam2, jammed,
                                              p.subband_bw_hz);
    c.fills_deficit = !falls_short(c.second_rate_bps, deficit_bps);
    c.ee = incremental_ee(totals, c.first_rate_bps - a.first_rate_bps + c.second_rate_bps,
                          pw.first - a.first_power_w + pw.second, totals.active_rrhs(), p);
    out.push_back(c);
  }
  return out;
}

std::optional<PairingCandidate> pair_user(const std::vector<PairingCandidate>& candidates) {
  std::optional<PairingCandidate> best_fill;
  std::optional<PairingCandidate> best_rate;
  for (const auto& c : candidates) {
    if (c.fills_deficit) {
      if (!best_fill || c.ee > best_fill->ee) best_fill = c;
    } else if (!best_rate || c.second_rate_bps > best_rate->second_rate_bps) {
      best_rate = c;
    }
  }
  return best_fill ? best_fill : best_rate;
}

void apply_pairing(std::vector<Assignment>& assignments, int k2, const PairingCandidate& c) {
  auto& a = assignments[static_cast<std::size_t>(c.assignment_index)];
  a.first_power_w = c.first_power_w;
  a.first_rate_bps = c.first_rate_bps;
  a.second = SecondUser{k2, c.second_power_w, c.second_rate_bps};
  a.prediction = c.prediction;
  a.assumed_triggered = c.assumed_triggered;
}

std::vector<Assignment> run_noma_timeslot(const SlotContext& ctx) {
  auto assignments = oma::run_oma_timeslot(ctx);
  const int users = ctx.channel.num_users;

  std::vector<double> deficit(static_cast<std::size_t>(users), 0.0);
  std::vector<int> pool;
  for (int k = 0; k < users; ++k) {
    const double required = ctx.ledger[k].required_bps;
    if (required <= 0.0) continue;
    const int idx = find_first_user_assignment(assignments, k);
    const double predicted = idx < 0 ? 0.0 : assignments[static_cast<std::size_t>(idx)].first_rate_bps;
    if (falls_short(predicted, required)) {
      deficit[static_cast<std::size_t>(k)] = required - predicted;
      pool.push_back(k);
    }
  }

  std::vector<int> sole;
  for (std::size_t i = 0; i < assignments.size(); ++i) sole.push_back(static_cast<int>(i));

  while (!sole.empty() && !pool.empty()) {
    auto it = std::max_element(pool.begin(), pool.end(), [&](int a, int b) {
      return deficit[static_cast<std::size_t>(a)] < deficit[static_cast<std::size_t>(b)];
    });
    const int k2 = *it;
    pool.erase(it);
    const auto candidates = build_candidates(ctx, k2, deficit[static_cast<std::size_t>(k2)], sole, assignments);
    const auto choice = pair_user(candidates);
    if (!choice) continue;
    apply_pairing(assignments, k2, *choice);
    sole.erase(std::find(sole.begin(), sole.end(), choice->assignment_index));
  }
  return assignments;
}

}  // namespace dasjam::noma
