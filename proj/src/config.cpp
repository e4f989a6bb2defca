#include "dasjam/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace dasjam {

std::string_view to_string(Scheduler s) {
  switch (s) {
    case Scheduler::Oma: return "oma";
    case Scheduler::Noma: return "noma";
    case Scheduler::Mat: return "mat";
  }
  return "unknown";
}

Scheduler parse_scheduler(std::string_view name) {
  if (name == "oma") return Scheduler::Oma;
  if (name == "noma") return Scheduler::Noma;
  if (name == "mat") return Scheduler::Mat;
  throw InvalidConfig("unknown scheduler '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidConfig(what);
  };
  require(cell_radius_m > 0.0, "cell_radius_m must be > 0");
  require(num_rrh >= 1, "num_rrh must be >= 1");
  require(num_users >= 1, "num_users must be >= 1");
  require(num_subbands >= 1, "num_subbands must be >= 1");
  require(num_users <= num_subbands, "num_users must not exceed num_subbands");
  require(horizon_slots >= 1, "horizon_slots must be >= 1");
  require(slot_duration_s > 0.0, "slot_duration_s must be > 0");
  require(target_rate_bps >= 0.0, "target_rate_bps must be >= 0");
  require(jammer_power_w >= 0.0, "jammer_power_w must be >= 0");
  require(jammer_threshold_w > 0.0, "jammer_threshold_w must be > 0");
  require(static_power_w >= 0.0, "static_power_w must be >= 0");
  require(epsilon_w_per_bps >= 0.0, "epsilon_w_per_bps must be >= 0");
  require(pmc_margin >= 0.0, "pmc_margin must be >= 0");
  require(num_drops >= 1, "num_drops must be >= 1");
  require(!schedulers.empty(), "schedulers must not be empty");
  for (double v : sweep_target_rate_bps) require(v >= 0.0, "sweep_target_rate_bps entries must be >= 0");
  for (int v : sweep_num_rrh) require(v >= 1, "sweep_num_rrh entries must be >= 1");
  for (double v : sweep_jammer_power_w) require(v >= 0.0, "sweep_jammer_power_w entries must be >= 0");
  for (double v : sweep_static_power_w) require(v >= 0.0, "sweep_static_power_w entries must be >= 0");
  channel_params().validate();
}

ChannelParams ExperimentConfig::channel_params() const {
  ChannelParams p;
  p.bandwidth_hz = bandwidth_hz;
  p.num_subbands = num_subbands;
  p.noise_psd_w_per_hz = noise_psd_w_per_hz;
  p.pathloss_exponent = pathloss_exponent;
  p.shadowing_std_db = shadowing_std_db;
  p.rms_delay_spread_s = rms_delay_spread_s;
  p.num_taps = num_taps;
  p.min_distance_m = min_distance_m;
  return p;
}

SchedulerParams ExperimentConfig::scheduler_params() const {
  const auto ch = channel_params();
  return {ch.subband_bandwidth_hz(), ch.noise_power_w(), epsilon_w_per_bps, static_power_w, pmc_margin};
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const double d = std::strtod(begin, &end);
  if (v.empty() || end != begin + v.size() || std::isnan(d)) {
    throw InvalidConfig("bad number for '" + key + "': '" + v + "'");
  }
  return d;
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& v) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw InvalidConfig("bad integer for '" + key + "': '" + v + "'");
  }
  return out;
}

std::string format_double(double d) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

template <typename T, typename F>
std::string join(const std::vector<T>& v, F fmt) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt(v[i]);
  }
  return out;
}

struct Field {
  const char* key;
  std::function<void(ExperimentConfig&, const std::string&)> parse;
  std::function<std::string(const ExperimentConfig&)> print;
};

template <typename T>
Field scalar(const char* key, T ExperimentConfig::*member) {
  return {key,
          [key, member](ExperimentConfig& c, const std::string& v) {
            if constexpr (std::is_floating_point_v<T>) {
              c.*member = parse_double(key, v);
            } else {
              c.*member = parse_int<T>(key, v);
            }
          },
          [member](const ExperimentConfig& c) {
            if constexpr (std::is_floating_point_v<T>) {
              return format_double(c.*member);
            } else {
              return std::to_string(c.*member);
            }
          }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      scalar("cell_radius_m", &ExperimentConfig::cell_radius_m),
      scalar("num_rrh", &ExperimentConfig::num_rrh),
      scalar("num_users", &ExperimentConfig::num_users),
      scalar("num_subbands", &ExperimentConfig::num_subbands),
      scalar("bandwidth_hz", &ExperimentConfig::bandwidth_hz),
      scalar("noise_psd_w_per_hz", &ExperimentConfig::noise_psd_w_per_hz),
      scalar("horizon_slots", &ExperimentConfig::horizon_slots),
      scalar("slot_duration_s", &ExperimentConfig::slot_duration_s),
      scalar("target_rate_bps", &ExperimentConfig::target_rate_bps),
      scalar("jammer_power_w", &ExperimentConfig::jammer_power_w),
      scalar("jammer_threshold_w", &ExperimentConfig::jammer_threshold_w),
      scalar("static_power_w", &ExperimentConfig::static_power_w),
      scalar("epsilon_w_per_bps", &ExperimentConfig::epsilon_w_per_bps),
      scalar("pmc_margin", &ExperimentConfig::pmc_margin),
      scalar("pathloss_exponent", &ExperimentConfig::pathloss_exponent),
      scalar("shadowing_std_db", &ExperimentConfig::shadowing_std_db),
      scalar("rms_delay_spread_s", &ExperimentConfig::rms_delay_spread_s),
      scalar("num_taps", &ExperimentConfig::num_taps),
      scalar("min_distance_m", &ExperimentConfig::min_distance_m),
      scalar("num_drops", &ExperimentConfig::num_drops),
      scalar("base_seed", &ExperimentConfig::base_seed),
      {"schedulers",
       [](ExperimentConfig& c, const std::string& v) {
         c.schedulers.clear();
         for (const auto& s : split_list(v)) c.schedulers.push_back(parse_scheduler(s));
       },
       [](const ExperimentConfig& c) {
         return join(c.schedulers, [](Scheduler s) { return std::string(to_string(s)); });
       }},
      {"sweep_target_rate_bps",
       [](ExperimentConfig& c, const std::string& v) {
         c.sweep_target_rate_bps.clear();
         for (const auto& s : split_list(v)) c.sweep_target_rate_bps.push_back(parse_double("sweep_target_rate_bps", s));
       },
       [](const ExperimentConfig& c) { return join(c.sweep_target_rate_bps, format_double); }},
      {"sweep_num_rrh",
       [](ExperimentConfig& c, const std::string& v) {
         c.sweep_num_rrh.clear();
         for (const auto& s : split_list(v)) c.sweep_num_rrh.push_back(parse_int<int>("sweep_num_rrh", s));
       },
       [](const ExperimentConfig& c) { return join(c.sweep_num_rrh, [](int r) { return std::to_string(r); }); }},
      {"sweep_jammer_power_w",
       [](ExperimentConfig& c, const std::string& v) {
         c.sweep_jammer_power_w.clear();
         for (const auto& s : split_list(v)) c.sweep_jammer_power_w.push_back(parse_double("sweep_jammer_power_w", s));
       },
       [](const ExperimentConfig& c) { return join(c.sweep_jammer_power_w, format_double); }},
      {"sweep_static_power_w",
       [](ExperimentConfig& c, const std::string& v) {
         c.sweep_static_power_w.clear();
         for (const auto& s : split_list(v)) c.sweep_static_power_w.push_back(parse_double("sweep_static_power_w", s));
       },
       [](const ExperimentConfig& c) { return join(c.sweep_static_power_w, format_double); }},
  };
  return table;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw InvalidConfig("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const auto key = trim(std::string_view(body).substr(0, eq));
    const auto value = trim(std::string_view(body).substr(eq + 1));
    const auto& table = fields();
    const auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) { return key == f.key; });
    if (it == table.end()) throw InvalidConfig("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (!seen.insert(key).second) throw InvalidConfig("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    it->parse(cfg, value);
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& config) {
  std::string out;
  for (const auto& f : fields()) {
    out += f.key;
    out += " = ";
    out += f.print(config);
    out += "\n";
  }
  return out;
}

std::string config_hash(const ExperimentConfig& config) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : serialize_config(config)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace dasjam
