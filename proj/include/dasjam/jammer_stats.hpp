#pragma once

#include <string_view>

#include <Eigen/Core>

namespace dasjam {

enum class TriggerPrediction {
  WillNotTrigger,
  WillTrigger,
  UncertainNearP1,  // conservatory: transmit at the known-safe power
  UncertainNearP2,  // aggressive: provision for jamming
};

std::string_view to_string(TriggerPrediction p);

/// Outcome the scheduler plans for once a prediction has been acted on.
constexpr bool assumes_triggered(TriggerPrediction p) {
  return p == TriggerPrediction::WillTrigger || p == TriggerPrediction::UncertainNearP2;
}

enum class StatsUpdate { Unchanged, RaisedP1, LoweredP2, Inconsistent };

/// Learned bracket [p1, p2] around the jammer's (unknown) triggering power
/// for every (subband, RRH). p1 is the largest power seen not to trigger,
/// p2 the smallest seen to trigger.
class JammerStatistics {
public:
  JammerStatistics(int num_subbands, int num_rrhs);

  /// Classify a planned power. Powers at or below p1 are known safe; powers
  /// at or above p2 are known to trigger. Inside the bracket the nearer
  /// bound wins, ties going to p1. A fresh bracket (p1 = 0, p2 = inf) has no
  /// usable distance and is classified as UncertainNearP2.
  TriggerPrediction predict(int n, int r, double power_w) const;

  StatsUpdate update(int n, int r, double power_w, bool alpha);

  double p1(int n, int r) const { return p1_(n, r); }
  double p2(int n, int r) const { return p2_(n, r); }
  const Eigen::ArrayXXd& p1() const { return p1_; }
  const Eigen::ArrayXXd& p2() const { return p2_; }
  int num_subbands() const { return static_cast<int>(p1_.rows()); }
  int num_rrhs() const { return static_cast<int>(p1_.cols()); }

private:
  Eigen::ArrayXXd p1_;
  Eigen::ArrayXXd p2_;
};

/// Jamming power levels reported by users on subbands where the jammer fired.
/// Unobserved (k, n) pairs fall back to the user's worst report, else 0.
class JamFeedback {
public:
  JamFeedback(int num_users, int num_subbands);

  void record(int k, int n, double perceived_w);
  bool observed(int k, int n) const { return observed_(k, n); }
  double estimate(int k, int n) const;

private:
  Eigen::ArrayXXd value_;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> observed_;
  Eigen::ArrayXd worst_;
};

}  // namespace dasjam
