#include <doctest.h>

#include <cmath>
#include <random>

#include "dasjam/jammer_stats.hpp"

using namespace dasjam;

namespace {

JammerStatistics bracket(double p1, double p2) {
  JammerStatistics s(1, 1);
  if (std::isfinite(p2)) s.update(0, 0, p2, true);
  if (p1 > 0.0) s.update(0, 0, p1, false);
  return s;
}

}  // namespace

TEST_SUITE("jammer_stats") {
  TEST_CASE("prediction") {
    const auto s = bracket(0.1, 0.5);
    CHECK(s.predict(0, 0, 0.05) == TriggerPrediction::WillNotTrigger);
    CHECK(s.predict(0, 0, 0.6) == TriggerPrediction::WillTrigger);
    CHECK(s.predict(0, 0, 0.15) == TriggerPrediction::UncertainNearP1);
    CHECK(s.predict(0, 0, 0.45) == TriggerPrediction::UncertainNearP2);
    CHECK(s.predict(0, 0, 0.3) == TriggerPrediction::UncertainNearP1);  // tie goes conservatory
    CHECK(s.predict(0, 0, 0.1) == TriggerPrediction::WillNotTrigger);
    CHECK(s.predict(0, 0, 0.5) == TriggerPrediction::WillTrigger);

    const JammerStatistics fresh(1, 1);
    CHECK(fresh.predict(0, 0, 1e-3) == TriggerPrediction::UncertainNearP2);
    // Only an upper bound known: close to zero is conservatory.
    const auto upper_only = bracket(0.0, 0.5);
    CHECK(upper_only.predict(0, 0, 0.1) == TriggerPrediction::UncertainNearP1);
    const auto lower_only = bracket(0.1, INFINITY);
    CHECK(lower_only.predict(0, 0, 5.0) == TriggerPrediction::UncertainNearP1);

    CHECK(assumes_triggered(TriggerPrediction::WillTrigger));
    CHECK(assumes_triggered(TriggerPrediction::UncertainNearP2));
    CHECK_FALSE(assumes_triggered(TriggerPrediction::UncertainNearP1));
    CHECK_FALSE(assumes_triggered(TriggerPrediction::WillNotTrigger));
  }

  TEST_CASE("update rules") {
    JammerStatistics s(1, 1);
    CHECK(s.update(0, 0, 0.5, true) == StatsUpdate::LoweredP2);
    CHECK(s.p2(0, 0) == 0.5);
    CHECK(s.update(0, 0, 0.1, false) == StatsUpdate::RaisedP1);
    CHECK(s.p1(0, 0) == 0.1);
    CHECK(s.update(0, 0, 0.3, true) == StatsUpdate::LoweredP2);
    CHECK(s.p2(0, 0) == 0.3);
    CHECK(s.update(0, 0, 0.4, true) == StatsUpdate::Unchanged);
    CHECK(s.update(0, 0, 0.05, false) == StatsUpdate::Unchanged);
    CHECK(s.update(0, 0, 0.05, true) == StatsUpdate::Inconsistent);
    CHECK(s.update(0, 0, 0.35, false) == StatsUpdate::Inconsistent);
    CHECK(s.p1(0, 0) == 0.1);
    CHECK(s.p2(0, 0) == 0.3);
  }

  TEST_CASE("bracket stays sound against a threshold jammer") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      const double boundary = std::pow(10.0, -6.0 + 6.0 * u(rng));
      JammerStatistics s(1, 1);
      double width = INFINITY;
      for (int step = 0; step < 50; ++step) {
        const double power = boundary * std::pow(10.0, -2.0 + 4.0 * u(rng));
        const bool alpha = power > boundary;
        const auto outcome = s.predict(0, 0, power);
        if (outcome == TriggerPrediction::WillNotTrigger) CHECK_FALSE(alpha);
        if (outcome == TriggerPrediction::WillTrigger) CHECK(alpha);
        CHECK(s.update(0, 0, power, alpha) != StatsUpdate::Inconsistent);
        CHECK(s.p1(0, 0) < boundary);
        CHECK(s.p2(0, 0) > boundary);
        const double w = s.p2(0, 0) - s.p1(0, 0);
        CHECK(w <= width);
        width = w;
      }
    }
  }

  TEST_CASE("jam feedback") {
    JamFeedback f(2, 3);
    CHECK(f.estimate(0, 0) == 0.0);
    f.record(0, 1, 2e-12);
    f.record(0, 2, 5e-12);
    CHECK(f.observed(0, 1));
    CHECK_FALSE(f.observed(0, 0));
    CHECK(f.estimate(0, 1) == 2e-12);
    CHECK(f.estimate(0, 0) == 5e-12);  // worst report of the same user
    CHECK(f.estimate(1, 0) == 0.0);
  }
}
