#include "dasjam/jammer_stats.hpp"

#include <cmath>
#include <limits>

namespace dasjam {

std::string_view to_string(TriggerPrediction p) {
  switch (p) {
    case TriggerPrediction::WillNotTrigger: return "will_not_trigger";
    case TriggerPrediction::WillTrigger: return "will_trigger";
    case TriggerPrediction::UncertainNearP1: return "conservatory";
    case TriggerPrediction::UncertainNearP2: return "aggressive";
  }
  return "unknown";
}

JammerStatistics::JammerStatistics(int num_subbands, int num_rrhs)
    : p1_(Eigen::ArrayXXd::Zero(num_subbands, num_rrhs)),
      p2_(Eigen::ArrayXXd::Constant(num_subbands, num_rrhs, std::numeric_limits<double>::infinity())) {}

TriggerPrediction JammerStatistics::predict(int n, int r, double power_w) const {
  const double lo = p1_(n, r);
  const double hi = p2_(n, r);
  if (power_w <= lo) return TriggerPrediction::WillNotTrigger;
  if (power_w >= hi) return TriggerPrediction::WillTrigger;
  if (lo == 0.0 && std::isinf(hi)) return TriggerPrediction::UncertainNearP2;
  if (power_w - lo <= hi - power_w) return TriggerPrediction::UncertainNearP1;
  return TriggerPrediction::UncertainNearP2;
}

StatsUpdate JammerStatistics::update(int n, int r, double power_w, bool alpha) {
  double& lo = p1_(n, r);
  double& hi = p2_(n, r);
  if (alpha) {
    if (power_w <= lo) return StatsUpdate::Inconsistent;
    if (power_w < hi) {
      hi = power_w;
      return StatsUpdate::LoweredP2;
    }
    return StatsUpdate::Unchanged;
  }
  if (power_w >= hi) return StatsUpdate::Inconsistent;
  if (power_w > lo) {
    lo = power_w;
    return StatsUpdate::RaisedP1;
  }
  return StatsUpdate::Unchanged;
}

JamFeedback::JamFeedback(int num_users, int num_subbands)
    : value_(Eigen::ArrayXXd::Zero(num_users, num_subbands)),
      observed_(Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(num_users, num_subbands, false)),
      worst_(Eigen::ArrayXd::Zero(num_users)) {}

void JamFeedback::record(int k, int n, double perceived_w) {
  value_(k, n) = perceived_w;
  observed_(k, n) = true;
  worst_(k) = std::max(worst_(k), perceived_w);
}

double JamFeedback::estimate(int k, int n) const {
  return observed_(k, n) ? value_(k, n) : worst_(k);
}

}  // namespace dasjam
