#include <doctest.h>

#include <cmath>
#include <set>

#include "dasjam/engine.hpp"
#include "dasjam/phy_math.hpp"

using namespace dasjam;

namespace {

ExperimentConfig small(int drops = 4) {
  ExperimentConfig c;
  c.num_drops = drops;
  return c;
}

bool same_records(const HorizonResult& a, const HorizonResult& b) {
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& x = a.records[i];
    const auto& y = b.records[i];
    if (x.achieved_rate_bps != y.achieved_rate_bps || x.user_power_w != y.user_power_w ||
        x.true_alpha != y.true_alpha || x.ee_bits_per_joule != y.ee_bits_per_joule)
      return false;
  }
  return a.final_avg_rate_bps == b.final_avg_rate_bps;
}

}  // namespace

TEST_SUITE("engine") {
  TEST_CASE("resolving a timeslot") {
    ChannelRealization ch(2, 2, 2, 2.5e-15);
    ch.user_rrh[0].setConstant(1e-5);  // h^2 = 1e-10
    ch.user_rrh[1].setConstant(1e-6);
    ch.rrh_jammer.setConstant(1e-4);  // boundary power 1e-4 W
    ch.jammer_user.setConstant(5e-8);  // P_J g^2 = 2.5e-15
    const ReactiveJammer jammer(1e-12, 1.0, ch);
    const SchedulerParams params;

    SUBCASE("empty") {
      const auto rec = resolve_timeslot({}, jammer, ch, params);
      CHECK(rec.total_rate_bps == 0.0);
      CHECK(rec.total_tx_power_w == 0.0);
      CHECK(rec.active_rrhs == 0);
      CHECK(rec.ee_bits_per_joule == 0.0);
    }
    SUBCASE("below the boundary") {
      Assignment a;
      a.subband = 0, a.rrh = 0, a.first_user = 0, a.first_power_w = 2.5e-5;
      const auto rec = resolve_timeslot({a}, jammer, ch, params);
      CHECK_FALSE(rec.true_alpha[0]);
      CHECK(rec.achieved_rate_bps(0) == doctest::Approx(625000.0).epsilon(1e-12));
      CHECK(rec.active_rrhs == 1);
    }
    SUBCASE("planned for a known trigger") {
      const double required = 3e6;
      Assignment a;
      a.subband = 1, a.rrh = 0, a.first_user = 1;
      a.first_power_w = phy::power_for_rate_single(required, 1e-10, 2.5e-15 + 2.5e-15, 625e3);
      a.prediction = TriggerPrediction::WillTrigger;
      a.assumed_triggered = true;
      Assignment b;
      b.subband = 0, b.rrh = 1, b.first_user = 0, b.first_power_w = 1e-6;
      const auto rec = resolve_timeslot({a, b}, jammer, ch, params);
      REQUIRE(rec.true_alpha[0]);
      CHECK(rec.achieved_rate_bps(1) == doctest::Approx(required).epsilon(1e-9));
      CHECK(rec.active_rrhs == 2);
      CHECK(rec.ee_bits_per_joule == doctest::Approx(phy::energy_efficiency(
                                         {rec.total_rate_bps, rec.total_tx_power_w, rec.active_rrhs,
                                          params.static_power_w, params.epsilon_w_per_bps}))
                                         .epsilon(1e-14));
    }
    SUBCASE("two antennas count towards one composite trigger") {
      Assignment a;
      a.subband = 0, a.rrh = 0, a.first_user = 0, a.first_power_w = 0.6e-4;
      a.extra = ExtraRrh{1, 0.6e-4};
      const auto rec = resolve_timeslot({a}, jammer, ch, params);
      CHECK(rec.true_alpha[0]);
      CHECK(rec.active_rrhs == 2);
      CHECK(rec.achieved_rate_bps(0) ==
            doctest::Approx(phy::mat_rate(0.6e-4, 1e-10, 0.6e-4, 1e-12, 2.5e-15, 2.5e-15, 625e3)));
    }
  }

  TEST_CASE("no jammer: every user lands on target") {
    auto c = small();
    c.jammer_power_w = 0.0;
    c.jammer_threshold_w = INFINITY;
    for (auto s : {Scheduler::Oma, Scheduler::Noma, Scheduler::Mat}) {
      for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto h = run_horizon(c, s, seed);
        for (int k = 0; k < c.num_users; ++k) {
          CHECK(h.final_avg_rate_bps(k) == doctest::Approx(c.target_rate_bps).epsilon(1e-6));
        }
        for (const auto& r : h.records) CHECK(std::count(r.true_alpha.begin(), r.true_alpha.end(), true) == 0);
      }
    }
  }

  TEST_CASE("single-slot horizon asks for the target") {
    UserLedger ledger(3, 5e6);
    ledger.begin_slot(1);
    for (int k = 0; k < 3; ++k) CHECK(ledger[k].required_bps == 5e6);
  }

  TEST_CASE("horizon bookkeeping") {
    const auto c = small();
    for (auto s : {Scheduler::Oma, Scheduler::Noma, Scheduler::Mat}) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto h = run_horizon(c, s, seed);
        CHECK(same_records(h, run_horizon(c, s, seed)));
        REQUIRE(h.records.size() == 10);
        Eigen::VectorXd bits = Eigen::VectorXd::Zero(c.num_users);
        for (const auto& r : h.records) {
          bits += r.achieved_rate_bps * c.slot_duration_s;
          std::set<int> rrhs, subbands;
          for (const auto& a : r.assignments) {
            rrhs.insert(a.rrh);
            if (a.extra) rrhs.insert(a.extra->rrh);
            CHECK(subbands.insert(a.subband).second);
          }
          CHECK(r.active_rrhs == static_cast<int>(rrhs.size()));
          CHECK(r.ee_bits_per_joule == phy::energy_efficiency({r.total_rate_bps, r.total_tx_power_w, r.active_rrhs,
                                                               c.static_power_w, c.epsilon_w_per_bps}));
          CHECK(r.total_rate_bps == doctest::Approx(r.achieved_rate_bps.sum()));
          CHECK(r.prediction_violations == 0);
          CHECK(r.bracket_violations == 0);
          CHECK(r.stats_inconsistencies == 0);
        }
        const Eigen::VectorXd avg = bits / (10 * c.slot_duration_s);
        for (int k = 0; k < c.num_users; ++k) {
          CHECK(h.final_avg_rate_bps(k) == doctest::Approx(avg(k)).epsilon(1e-9));
        }
      }
    }
  }

  TEST_CASE("channel is shared across schedulers for a seed") {
    const auto c = small();
    const auto a = drop_channel(c, 17);
    const auto b = drop_channel(c, 17);
    CHECK((a.jammer_user == b.jammer_user).all());
    CHECK((a.user_rrh[3] == b.user_rrh[3]).all());
  }

  TEST_CASE("Monte Carlo aggregation") {
    auto c = small();
    const auto one = run_monte_carlo(c, Scheduler::Oma, 1, 5);
    const auto single = run_horizon(c, Scheduler::Oma, 5).metrics;
    CHECK(one.total_power_w.mean == single.mean_total_power_w);
    CHECK(one.ee.mean == single.mean_ee);
    CHECK(one.total_power_w.std_error == 0.0);

    const auto four = run_monte_carlo(c, Scheduler::Noma, 4, 100);
    const auto eight = run_monte_carlo(c, Scheduler::Noma, 8, 100, 3);
    for (int d = 0; d < 4; ++d) {
      CHECK(four.seeds[d] == 100u + d);
      CHECK(four.drops[d].mean_ee == eight.drops[d].mean_ee);
      CHECK(four.drops[d].mean_total_power_w == eight.drops[d].mean_total_power_w);
    }

    const auto s = summarize({1.0, 2.0, 3.0, 4.0});
    CHECK(s.mean == 2.5);
    CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));

    // Four disjoint 25-drop blocks against the 100 drops they make up. The
    // active-RRH count is bounded; power and EE are too heavy-tailed for this.
    const auto n100 = run_monte_carlo(c, Scheduler::Oma, 100, 1, 2);
    double se25 = 0.0;
    for (int block = 0; block < 4; ++block) {
      se25 += run_monte_carlo(c, Scheduler::Oma, 25, 1 + 25 * block).active_rrhs.std_error / 4.0;
    }
    const double ratio = se25 / n100.active_rrhs.std_error;
    CHECK(ratio > 1.6);
    CHECK(ratio < 2.5);
  }
}
