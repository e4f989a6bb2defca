#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dasjam/config.hpp"
#include "dasjam/engine.hpp"

namespace dasjam {

/// Figure families emitted by the experiment driver.
inline constexpr int kFirstFigure = 2;
inline constexpr int kLastFigure = 8;

/// Key of one Monte Carlo point of a sweep.
struct SweepPoint {
  Scheduler scheduler = Scheduler::Oma;
  int num_rrh = 7;
  double target_rate_bps = 5e6;
  double jammer_power_w = 1.0;
  double static_power_w = 1.0;

  auto operator<=>(const SweepPoint&) const = default;
  ExperimentConfig apply(ExperimentConfig base) const;
};

/// Points needed to draw one figure, in output order.
std::vector<SweepPoint> figure_points(int figure, const ExperimentConfig& config);

/// Column header of figN.csv (aggregate) and figN_drops.csv (per drop).
std::vector<std::string> aggregate_columns(int figure);
std::vector<std::string> drop_columns(int figure);

struct ExperimentFiles {
  std::vector<std::filesystem::path> written;
};

/// Runs every requested figure family and writes figN.csv / figN_drops.csv
/// into `out_dir`. Throws InvalidConfig for unknown figures and
/// std::runtime_error when the directory cannot be written.
ExperimentFiles run_experiment(const ExperimentConfig& config, const std::vector<int>& figures,
                               const std::filesystem::path& out_dir, int workers = 1);

/// printf("%.9g").
std::string format_value(double v);

}  // namespace dasjam
