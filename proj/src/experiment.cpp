#include "dasjam/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

namespace dasjam {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

ExperimentConfig SweepPoint::apply(ExperimentConfig base) const {
  base.num_rrh = num_rrh;
  base.target_rate_bps = target_rate_bps;
  base.jammer_power_w = jammer_power_w;
  base.static_power_w = static_power_w;
  return base;
}

namespace {

void check_figure(int figure) {
  if (figure < kFirstFigure || figure > kLastFigure) {
    throw InvalidConfig("unknown figure " + std::to_string(figure));
  }
}

SweepPoint base_point(const ExperimentConfig& c, Scheduler s) {
  return {s, c.num_rrh, c.target_rate_bps, c.jammer_power_w, c.static_power_w};
}

const std::vector<std::string> kKeyColumns = {"config_hash",    "seed",           "drop_id",
                                               "scheduler",      "num_rrh",        "target_rate_bps",
                                               "jammer_power_w", "static_power_w"};

std::vector<std::string> metric_columns(int figure) {
  switch (figure) {
    case 2:
    case 6: return {"total_power_w", "total_power_dbw"};
    case 3:
    case 4: return {"ee_bits_per_joule", "ee_ratio_of_sums"};
    case 5: return {"active_rrhs"};
    case 7: return {"noma_paired_pct"};
    case 8: return {"outage_pct"};
    default: check_figure(figure); return {};
  }
}

double to_dbw(double w) { return 10.0 * std::log10(w); }

// Per-drop metric values for one figure (one row per slot for figure 8).
std::vector<std::vector<double>> drop_metrics(int figure, const HorizonMetrics& m) {
  switch (figure) {
    case 2:
    case 6: return {{m.mean_total_power_w, to_dbw(m.mean_total_power_w)}};
    case 3:
    case 4: return {{m.mean_ee, m.ee_ratio_of_sums}};
    case 5: return {{m.mean_active_rrhs}};
    case 7: return {{m.noma_paired_pct}};
    case 8: {
      std::vector<std::vector<double>> rows;
      for (double v : m.outage_pct) rows.push_back({v});
      return rows;
    }
    default: return {};
  }
}

// Aggregate metric values (mean, stderr pairs) for one figure.
std::vector<std::vector<double>> aggregate_metrics(int figure, const MonteCarloResult& mc) {
  switch (figure) {
    case 2:
    case 6: return {{mc.total_power_w.mean, mc.total_power_w.std_error, to_dbw(mc.total_power_w.mean)}};
    case 3:
    case 4: return {{mc.ee.mean, mc.ee.std_error, mc.ee_ratio_of_sums.mean, mc.ee_ratio_of_sums.std_error}};
    case 5: return {{mc.active_rrhs.mean, mc.active_rrhs.std_error}};
    case 7: return {{mc.noma_paired_pct.mean, mc.noma_paired_pct.std_error}};
    case 8: {
      std::vector<std::vector<double>> rows;
      for (const auto& s : mc.outage_pct) rows.push_back({s.mean, s.std_error});
      return rows;
    }
    default: return {};
  }
}

void write_row(std::ofstream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

std::vector<SweepPoint> figure_points(int figure, const ExperimentConfig& c) {
  check_figure(figure);
  std::vector<SweepPoint> pts;
  switch (figure) {
    case 2:
      for (int r : c.sweep_num_rrh) {
        for (auto s : c.schedulers) {
          for (double t : c.sweep_target_rate_bps) {
            auto p = base_point(c, s);
            p.num_rrh = r;
            p.target_rate_bps = t;
            pts.push_back(p);
          }
        }
      }
      break;
    case 3:
    case 7:
      for (auto s : c.schedulers) {
        if (figure == 7 && s != Scheduler::Noma) continue;
        for (double pj : c.sweep_jammer_power_w) {
          auto p = base_point(c, s);
          p.jammer_power_w = pj;
          pts.push_back(p);
        }
      }
      break;
    case 4:
    case 5:
    case 6:
      for (auto s : c.schedulers) {
        for (double ps : c.sweep_static_power_w) {
          auto p = base_point(c, s);
          p.static_power_w = ps;
          pts.push_back(p);
        }
      }
      break;
    case 8:
      for (auto s : c.schedulers) pts.push_back(base_point(c, s));
      break;
  }
  return pts;
}

std::vector<std::string> aggregate_columns(int figure) {
  auto cols = kKeyColumns;
  cols.push_back("num_drops");
  if (figure == 8) cols.push_back("slot");
  for (const auto& m : metric_columns(figure)) {
    if (m == "total_power_dbw") {
      cols.push_back(m);
      continue;
    }
    cols.push_back(m);
    cols.push_back(m + "_stderr");
  }
  return cols;
}

std::vector<std::string> drop_columns(int figure) {
  auto cols = kKeyColumns;
  if (figure == 8) cols.push_back("slot");
  for (const auto& m : metric_columns(figure)) cols.push_back(m);
  return cols;
}

ExperimentFiles run_experiment(const ExperimentConfig& config, const std::vector<int>& figures,
                               const std::filesystem::path& out_dir, int workers) {
  config.validate();
  for (int f : figures) check_figure(f);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (!std::filesystem::is_directory(out_dir)) throw std::runtime_error("cannot create output directory " + out_dir.string());

  const auto hash = config_hash(config);
  std::map<SweepPoint, MonteCarloResult> cache;
  auto result_for = [&](const SweepPoint& p) -> const MonteCarloResult& {
    auto it = cache.find(p);
    if (it == cache.end()) {
      it = cache.emplace(p, run_monte_carlo(p.apply(config), p.scheduler, config.num_drops, config.base_seed, workers))
               .first;
    }
    return it->second;
  };

  ExperimentFiles files;
  for (int f : figures) {
    const auto agg_path = out_dir / ("fig" + std::to_string(f) + ".csv");
    const auto drop_path = out_dir / ("fig" + std::to_string(f) + "_drops.csv");
    auto agg = open_csv(agg_path);
    auto drops = open_csv(drop_path);
    write_row(agg, aggregate_columns(f));
    write_row(drops, drop_columns(f));

    for (const auto& p : figure_points(f, config)) {
      const auto& mc = result_for(p);
      const std::vector<std::string> key_tail = {std::string(to_string(p.scheduler)), std::to_string(p.num_rrh),
                                                 format_value(p.target_rate_bps), format_value(p.jammer_power_w),
                                                 format_value(p.static_power_w)};

      const auto agg_rows = aggregate_metrics(f, mc);
      for (std::size_t row = 0; row < agg_rows.size(); ++row) {
        std::vector<std::string> cells = {hash, std::to_string(config.base_seed), "-1"};
        cells.insert(cells.end(), key_tail.begin(), key_tail.end());
        cells.push_back(std::to_string(config.num_drops));
        if (f == 8) cells.push_back(std::to_string(row + 1));
        for (double v : agg_rows[row]) cells.push_back(format_value(v));
        write_row(agg, cells);
      }

      for (std::size_t d = 0; d < mc.drops.size(); ++d) {
        const auto rows = drop_metrics(f, mc.drops[d]);
        for (std::size_t row = 0; row < rows.size(); ++row) {
          std::vector<std::string> cells = {hash, std::to_string(mc.seeds[d]), std::to_string(d)};
          cells.insert(cells.end(), key_tail.begin(), key_tail.end());
          if (f == 8) cells.push_back(std::to_string(row + 1));
          for (double v : rows[row]) cells.push_back(format_value(v));
          write_row(drops, cells);
        }
      }
    }
    if (!agg || !drops) throw std::runtime_error("write failed in " + out_dir.string());
    files.written.push_back(agg_path);
    files.written.push_back(drop_path);
  }
  return files;
}

}  // namespace dasjam
