#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "dasjam/assignment.hpp"
#include "dasjam/config.hpp"
#include "dasjam/jammer.hpp"

namespace dasjam {

/// Ground-truth outcome of one timeslot.
struct TimeslotRecord {
  int slot = 0;
  std::vector<Assignment> assignments;
  std::vector<bool> true_alpha;  // aligned with assignments
  Eigen::VectorXd achieved_rate_bps;
  Eigen::VectorXd user_power_w;
  double total_rate_bps = 0.0;
  double total_tx_power_w = 0.0;
  int active_rrhs = 0;
  double ee_bits_per_joule = 0.0;
  std::vector<bool> outage;  // avg rate below target after this slot
  int sic_failures = 0;
  int paired_users = 0;
  int prediction_violations = 0;  // known-outcome predictions contradicted by the jammer
  int stats_inconsistencies = 0;
  int bracket_violations = 0;  // (n, r) whose [p1, p2] misses the true boundary
};

struct HorizonMetrics {
  double mean_total_power_w = 0.0;
  double mean_ee = 0.0;
  double ee_ratio_of_sums = 0.0;
  double mean_active_rrhs = 0.0;
  double noma_paired_pct = 0.0;
  std::vector<double> outage_pct;  // per slot
  int sic_failures = 0;
  int prediction_violations = 0;
  int stats_inconsistencies = 0;
  int bracket_violations = 0;
};

struct HorizonResult {
  std::vector<TimeslotRecord> records;
  Eigen::VectorXd final_avg_rate_bps;
  Eigen::VectorXd final_avg_power_w;
  HorizonMetrics metrics;
};

/// Applies the jammer's true reaction to a slot's allocation and evaluates
/// what every user actually receives.
TimeslotRecord resolve_timeslot(const std::vector<Assignment>& assignments, const ReactiveJammer& jammer,
                                const ChannelRealization& channel, const SchedulerParams& params);

std::vector<Assignment> schedule_timeslot(Scheduler scheduler, const SlotContext& ctx);

/// Full horizon over a fixed channel.
HorizonResult simulate_horizon(const ExperimentConfig& config, Scheduler scheduler,
                               const ChannelRealization& channel);

/// Channel for one drop; identical for every scheduler given the seed.
ChannelRealization drop_channel(const ExperimentConfig& config, std::uint64_t seed);

HorizonResult run_horizon(const ExperimentConfig& config, Scheduler scheduler, std::uint64_t seed);

struct MetricSummary {
  double mean = 0.0;
  double std_error = 0.0;
};

MetricSummary summarize(const std::vector<double>& samples);

struct MonteCarloResult {
  std::vector<std::uint64_t> seeds;
  std::vector<HorizonMetrics> drops;
  MetricSummary total_power_w;
  MetricSummary ee;
  MetricSummary ee_ratio_of_sums;
  MetricSummary active_rrhs;
  MetricSummary noma_paired_pct;
  std::vector<MetricSummary> outage_pct;  // per slot
};

/// Drop d uses seed base_seed + d. Drops run on `workers` threads; results
/// are ordered by drop index regardless of the worker count.
MonteCarloResult run_monte_carlo(const ExperimentConfig& config, Scheduler scheduler, int num_drops,
                                 std::uint64_t base_seed, int workers = 1);

}  // namespace dasjam
