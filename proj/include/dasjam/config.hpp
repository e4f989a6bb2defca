#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dasjam/assignment.hpp"
#include "dasjam/scenario.hpp"

namespace dasjam {

enum class Scheduler { Oma, Noma, Mat };

std::string_view to_string(Scheduler s);
Scheduler parse_scheduler(std::string_view name);

/// Every scalar of an experiment. Defaults reproduce the reference setup:
/// hexagonal 500 m cell, K = S = 16 over 10 MHz, 10-slot horizon of 1 ms.
struct ExperimentConfig {
  double cell_radius_m = 500.0;
  int num_rrh = 7;
  int num_users = 16;
  int num_subbands = 16;
  double bandwidth_hz = 10e6;
  double noise_psd_w_per_hz = 4e-21;
  int horizon_slots = 10;
  double slot_duration_s = 1e-3;
  double target_rate_bps = 5e6;
  double jammer_power_w = 1.0;
  double jammer_threshold_w = 1e-12;
  double static_power_w = 1.0;
  double epsilon_w_per_bps = 0.1;
  double pmc_margin = 0.01;
  double pathloss_exponent = 3.76;
  double shadowing_std_db = 8.0;
  double rms_delay_spread_s = 500e-9;
  int num_taps = 8;
  double min_distance_m = 10.0;
  int num_drops = 100;
  std::uint64_t base_seed = 1;
  std::vector<Scheduler> schedulers{Scheduler::Oma, Scheduler::Noma, Scheduler::Mat};
  // Sweep grids for the figure families.
  std::vector<double> sweep_target_rate_bps{1e6, 2e6, 3e6, 4e6, 5e6, 6e6, 7e6, 8e6, 9e6, 10e6};
  std::vector<int> sweep_num_rrh{1, 4, 7};
  std::vector<double> sweep_jammer_power_w{0.01, 0.1, 1.0, 10.0, 100.0};
  std::vector<double> sweep_static_power_w{1.0, 3.16227766016838, 10.0, 31.6227766016838, 100.0};

  void validate() const;
  ChannelParams channel_params() const;
  SchedulerParams scheduler_params() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Flat `key = value` text, one key per line, `#` starts a comment. Lists
/// are comma separated. Unknown or repeated keys are rejected.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);
/// 64-bit FNV-1a of the canonical text, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

}  // namespace dasjam
