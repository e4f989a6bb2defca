#include "dasjam/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "dasjam/phy_math.hpp"
#include "dasjam/sched_mat.hpp"
#include "dasjam/sched_noma.hpp"
#include "dasjam/sched_oma.hpp"

namespace dasjam {

TimeslotRecord resolve_timeslot(const std::vector<Assignment>& assignments, const ReactiveJammer& jammer,
                                const ChannelRealization& ch, const SchedulerParams& params) {
  TimeslotRecord rec;
  rec.assignments = assignments;
  rec.achieved_rate_bps = Eigen::VectorXd::Zero(ch.num_users);
  rec.user_power_w = Eigen::VectorXd::Zero(ch.num_users);
  std::vector<bool> rrh_active(static_cast<std::size_t>(ch.num_rrhs), false);
  const double w = params.subband_bw_hz;
  const double noise = params.noise_w;

  for (const auto& a : assignments) {
    const int n = a.subband;
    std::vector<RrhPower> tx{{a.rrh, a.rrh_power_w()}};
    if (a.extra) tx.push_back({a.extra->rrh, a.extra->power_w});
    const bool alpha = jammer.triggered(n, tx);
    rec.true_alpha.push_back(alpha);
    rrh_active[static_cast<std::size_t>(a.rrh)] = true;

    const int k1 = a.first_user;
    const double h1_sq = ch.h_sq(k1, n, a.rrh);
    const double jam1 = jammer.perceived_jam_power(k1, n);
    double rate1 = 0.0;
    if (a.extra) {
      rrh_active[static_cast<std::size_t>(a.extra->rrh)] = true;
      rate1 = phy::mat_rate(a.first_power_w, h1_sq, a.extra->power_w, ch.h_sq(k1, n, a.extra->rrh), noise,
                            alpha ? jam1 : 0.0, w);
      rec.user_power_w(k1) += a.extra->power_w;
    } else if (a.second) {
      const int k2 = a.second->user;
      const double h2_sq = ch.h_sq(k2, n, a.rrh);
      const double jam2 = jammer.perceived_jam_power(k2, n);
      const double rate2 = phy::rate_second_user(a.first_power_w, a.second->power_w, h2_sq, noise, jam2, alpha, w);
      rec.achieved_rate_bps(k2) += rate2;
      rec.user_power_w(k2) += a.second->power_w;
      ++rec.paired_users;
      if (phy::sic_feasible(ch.h(k1, n, a.rrh), ch.h(k2, n, a.rrh), ch.g(k1, n), ch.g(k2, n), alpha)) {
        rate1 = phy::rate_single({a.first_power_w, h1_sq, noise, jam1, alpha}, w);
      } else {
        // k1 cannot cancel k2 and decodes through it.
        rate1 = phy::rate_second_user(a.second->power_w, a.first_power_w, h1_sq, noise, jam1, alpha, w);
        ++rec.sic_failures;
      }
    } else {
      rate1 = phy::rate_single({a.first_power_w, h1_sq, noise, jam1, alpha}, w);
    }
    rec.achieved_rate_bps(k1) += rate1;
    rec.user_power_w(k1) += a.first_power_w;
  }

  rec.total_rate_bps = rec.achieved_rate_bps.sum();
  rec.total_tx_power_w = rec.user_power_w.sum();
  rec.active_rrhs = static_cast<int>(std::count(rrh_active.begin(), rrh_active.end(), true));
  rec.ee_bits_per_joule = phy::energy_efficiency(
      {rec.total_rate_bps, rec.total_tx_power_w, rec.active_rrhs, params.static_power_w, params.epsilon_w_per_bps});
  return rec;
}

std::vector<Assignment> schedule_timeslot(Scheduler scheduler, const SlotContext& ctx) {
  switch (scheduler) {
    case Scheduler::Oma: return oma::run_oma_timeslot(ctx);
    case Scheduler::Noma: return noma::run_noma_timeslot(ctx);
    case Scheduler::Mat: return mat::run_mat_timeslot(ctx);
  }
  return {};
}

namespace {

int count_bracket_violations(const JammerStatistics& stats, const ReactiveJammer& jammer,
                             const ChannelRealization& ch) {
  int bad = 0;
  for (int n = 0; n < ch.num_subbands; ++n) {
    for (int r = 0; r < ch.num_rrhs; ++r) {
      const double hj_sq = ch.h_jammer_sq(n, r);
      const bool lower_ok = stats.p1(n, r) * hj_sq < jammer.threshold_w();
      const bool upper_ok = std::isinf(stats.p2(n, r)) || stats.p2(n, r) * hj_sq > jammer.threshold_w();
      if (!lower_ok || !upper_ok) ++bad;
    }
  }
  return bad;
}

HorizonMetrics summarize_horizon(const std::vector<TimeslotRecord>& records, const ExperimentConfig& config) {
  HorizonMetrics m;
  const double slots = static_cast<double>(records.size());
  double rate_sum = 0.0, power_sum = 0.0, beta_sum = 0.0;
  for (const auto& r : records) {
    m.mean_total_power_w += r.total_tx_power_w / slots;
    m.mean_ee += r.ee_bits_per_joule / slots;
    m.mean_active_rrhs += r.active_rrhs / slots;
    m.noma_paired_pct += 100.0 * r.paired_users / config.num_users / slots;
    const auto outage = std::count(r.outage.begin(), r.outage.end(), true);
    m.outage_pct.push_back(100.0 * static_cast<double>(outage) / config.num_users);
    m.sic_failures += r.sic_failures;
    m.prediction_violations += r.prediction_violations;
    m.stats_inconsistencies += r.stats_inconsistencies;
    m.bracket_violations += r.bracket_violations;
    rate_sum += r.total_rate_bps;
    power_sum += r.total_tx_power_w;
    beta_sum += r.active_rrhs;
  }
  // Sum of beta over slots times P_static is the horizon's static energy per T_S.
  if (rate_sum > 0.0) {
    m.ee_ratio_of_sums =
        rate_sum / (config.epsilon_w_per_bps * rate_sum + power_sum + beta_sum * config.static_power_w);
  }
  return m;
}

}  // namespace

HorizonResult simulate_horizon(const ExperimentConfig& config, Scheduler scheduler, const ChannelRealization& ch) {
  config.validate();
  const auto params = config.scheduler_params();
  const ReactiveJammer jammer(config.jammer_threshold_w, config.jammer_power_w, ch);
  JammerStatistics stats(ch.num_subbands, ch.num_rrhs);
  JamFeedback feedback(ch.num_users, ch.num_subbands);
  UserLedger ledger(ch.num_users, config.target_rate_bps);

  HorizonResult out;
  for (int i = 1; i <= config.horizon_slots; ++i) {
    ledger.begin_slot(i);
    const SlotContext ctx{ch, stats, feedback, ledger, i, params};
    auto rec = resolve_timeslot(schedule_timeslot(scheduler, ctx), jammer, ch, params);
    rec.slot = i;

    for (std::size_t j = 0; j < rec.assignments.size(); ++j) {
      const auto& a = rec.assignments[j];
      const bool alpha = rec.true_alpha[j];
      // A two-RRH composite cannot be attributed to one (n, r).
      if (!a.extra) {
        if ((a.prediction == TriggerPrediction::WillNotTrigger && alpha) ||
            (a.prediction == TriggerPrediction::WillTrigger && !alpha)) {
          ++rec.prediction_violations;
        }
        if (stats.update(a.subband, a.rrh, a.rrh_power_w(), alpha) == StatsUpdate::Inconsistent) {
          ++rec.stats_inconsistencies;
        }
      }
      if (alpha) {
        feedback.record(a.first_user, a.subband, jammer.perceived_jam_power(a.first_user, a.subband));
        if (a.second) {
          feedback.record(a.second->user, a.subband, jammer.perceived_jam_power(a.second->user, a.subband));
        }
      }
    }

    ledger.end_slot(i, rec.achieved_rate_bps, rec.user_power_w);
    for (int k = 0; k < ch.num_users; ++k) {
      rec.outage.push_back(falls_short(ledger[k].avg_rate_bps, ledger[k].target_bps));
    }
    rec.bracket_violations = count_bracket_violations(stats, jammer, ch);
    out.records.push_back(std::move(rec));
  }

  out.final_avg_rate_bps.resize(ch.num_users);
  out.final_avg_power_w.resize(ch.num_users);
  for (int k = 0; k < ch.num_users; ++k) {
    out.final_avg_rate_bps(k) = ledger[k].avg_rate_bps;
    out.final_avg_power_w(k) = ledger[k].avg_power_w;
  }
  out.metrics = summarize_horizon(out.records, config);
  return out;
}

ChannelRealization drop_channel(const ExperimentConfig& config, std::uint64_t seed) {
  config.validate();
  Rng rng(seed);
  const auto geometry = make_geometry(config.num_rrh, config.num_users, config.cell_radius_m, rng);
  const auto params = config.channel_params();
  return generate_channel(geometry, params, params, rng);
}

HorizonResult run_horizon(const ExperimentConfig& config, Scheduler scheduler, std::uint64_t seed) {
  return simulate_horizon(config, scheduler, drop_channel(config, seed));
}

MetricSummary summarize(const std::vector<double>& samples) {
  MetricSummary s;
  if (samples.empty()) return s;
  const double n = static_cast<double>(samples.size());
  for (double x : samples) s.mean += x / n;
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - s.mean) * (x - s.mean);
    s.std_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return s;
}

MonteCarloResult run_monte_carlo(const ExperimentConfig& config, Scheduler scheduler, int num_drops,
                                 std::uint64_t base_seed, int workers) {
  if (num_drops < 1) throw InvalidConfig("num_drops must be >= 1");
  MonteCarloResult out;
  out.drops.resize(static_cast<std::size_t>(num_drops));
  for (int d = 0; d < num_drops; ++d) out.seeds.push_back(base_seed + static_cast<std::uint64_t>(d));

  std::atomic<int> next{0};
  auto work = [&] {
    for (int d = next++; d < num_drops; d = next++) {
      out.drops[static_cast<std::size_t>(d)] = run_horizon(config, scheduler, out.seeds[static_cast<std::size_t>(d)]).metrics;
    }
  };
  const int threads = std::max(1, std::min(workers, num_drops));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  auto collect = [&](auto field) {
    std::vector<double> v;
    v.reserve(out.drops.size());
    for (const auto& m : out.drops) v.push_back(field(m));
    return summarize(v);
  };
  out.total_power_w = collect([](const HorizonMetrics& m) { return m.mean_total_power_w; });
  out.ee = collect([](const HorizonMetrics& m) { return m.mean_ee; });
  out.ee_ratio_of_sums = collect([](const HorizonMetrics& m) { return m.ee_ratio_of_sums; });
  out.active_rrhs = collect([](const HorizonMetrics& m) { return m.mean_active_rrhs; });
  out.noma_paired_pct = collect([](const HorizonMetrics& m) { return m.noma_paired_pct; });
  for (int i = 0; i < config.horizon_slots; ++i) {
    out.outage_pct.push_back(collect([i](const HorizonMetrics& m) { return m.outage_pct[static_cast<std::size_t>(i)]; }));
  }
  return out;
}

}  // namespace dasjam
