#include <doctest.h>

#include <cmath>
#include <random>

#include "dasjam/phy_math.hpp"

using namespace dasjam::phy;

namespace {

constexpr double kW = 625e3;
constexpr double kNoise = 2.5e-15;

struct Draw {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> u{0.0, 1.0};
  explicit Draw(unsigned seed) : rng(seed) {}
  double log_uniform(double lo, double hi) { return lo * std::pow(hi / lo, u(rng)); }
  double uniform() { return u(rng); }
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("phy_math") {
  TEST_CASE("single-user rate") {
    CHECK(rate_single({2.5e-5, 1e-10, kNoise, 0.0, false}, kW) == doctest::Approx(625000.0).epsilon(1e-12));
    CHECK(rate_single({0.0, 1e-10, kNoise, 0.0, false}, kW) == 0.0);
    // Frozen from an independent evaluation of W log2(1 + P h^2 / (sigma^2 + jam)).
    CHECK(rate_single({2.5e-5, 1e-10, kNoise, 2.5e-15, true}, kW) ==
          doctest::Approx(365601.56295072264).epsilon(1e-12));
    // An inactive jammer contributes nothing.
    CHECK(rate_single({2.5e-5, 1e-10, kNoise, 1.0, false}, kW) == doctest::Approx(625000.0).epsilon(1e-12));
  }

  TEST_CASE("second-user rate") {
    CHECK(rate_second_user(1e-5, 3e-5, 1e-11, kNoise, 0.0, false, kW) ==
          doctest::Approx(98463.29811655001).epsilon(1e-12));
    CHECK(rate_second_user(0.0, 3e-5, 1e-11, kNoise, 0.0, false, kW) ==
          doctest::Approx(rate_single({3e-5, 1e-11, kNoise, 0.0, false}, kW)).epsilon(1e-14));
    CHECK(rate_second_user(1e-5, 0.0, 1e-11, kNoise, 0.0, false, kW) == 0.0);
  }

  TEST_CASE("power inverses") {
    CHECK(power_for_rate_single(0.0, 1e-10, kNoise, kW) == 0.0);
    CHECK(power_for_rate_single(625e3, 1e-10, kNoise, kW) == doctest::Approx(2.5e-5).epsilon(1e-12));
    CHECK(power_for_rate_second(0.0, 1e-5, 1e-11, kNoise, 0.0, false, kW) == 0.0);
    CHECK(power_for_rate_second(625e3, 1e-5, 1e-11, kNoise, 0.0, false, kW) == doctest::Approx(2.6e-4).epsilon(1e-12));
    CHECK(std::isinf(power_for_rate_single(1e9, 1e-10, kNoise, kW)));
  }

  TEST_CASE("inverse round-trips over random instances") {
    Draw d(1);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double rate = d.log_uniform(1e3, 1e7);
      const double g = d.log_uniform(1e-14, 1e-6);
      const double jam = d.uniform() < 0.5 ? 0.0 : d.log_uniform(1e-16, 1e-6);
      const bool on = jam > 0.0;
      const double p = power_for_rate_single(rate, g, kNoise + jam, kW);
      worst = std::max(worst, rel(rate_single({p, g, kNoise, jam, on}, kW), rate));

      const double p1 = d.log_uniform(1e-6, 1e2);
      const double p2 = power_for_rate_second(rate, p1, g, kNoise, jam, on, kW);
      worst = std::max(worst, rel(rate_second_user(p1, p2, g, kNoise, jam, on, kW), rate));

      const double g2 = d.log_uniform(1e-14, 1e-6);
      const double target = mat_rate(p1, g, 0.0, g2, kNoise, jam, kW) + rate;
      const double pm = mat_power(target, p1, g, g2, kNoise, jam, kW);
      worst = std::max(worst, rel(mat_rate(p1, g, pm, g2, kNoise, jam, kW), target));
    }
    CHECK(worst < 1e-9);
  }

  TEST_CASE("SIC condition") {
    CHECK(sic_feasible(2e-5, 1e-5, 1e-6, 1e-6, true));
    CHECK_FALSE(sic_feasible(1e-5, 1e-5, 1e-6, 1e-6, true));
    CHECK_FALSE(sic_feasible(1e-5, 2e-5, 1e-6, 1e-6, false));
    CHECK(sic_feasible(2e-5, 1e-5, 1.0, 1.0, false));
  }

  TEST_CASE("exact SINR dominance at zero noise") {
    Draw d(2);
    int bad = 0;
    for (int i = 0; i < 10000; ++i) {
      const double h1 = d.log_uniform(1e-7, 1e-2), h2 = d.log_uniform(1e-7, 1e-2);
      const double g1 = d.log_uniform(1e-7, 1e-2), g2 = d.log_uniform(1e-7, 1e-2);
      const double pj = d.log_uniform(1e-2, 1e2);
      const double p1 = d.log_uniform(1e-6, 1e2), p2 = d.log_uniform(1e-6, 1e2);
      const double at1 = sinr_second_at_first(p1, p2, h1 * h1, 0.0, pj * g1 * g1);
      const double at2 = sinr_second_at_second(p1, p2, h2 * h2, 0.0, pj * g2 * g2);
      if (sic_feasible(h1, h2, g1, g2, true)) {
        bad += !(at1 > at2);
      } else if (h1 * g2 < h2 * g1) {
        bad += !(at1 < at2);
      }
    }
    CHECK(bad == 0);
  }

  TEST_CASE("power multiplexing condition") {
    CHECK(enforce_pmc(1e-5, 2e-5, 1e-10, 0.0, false, 0.01) == 2e-5);
    CHECK(enforce_pmc(1e-5, 0.5e-5, 1e-10, 0.0, false, 0.01) == doctest::Approx(1.01e-5).epsilon(1e-12));
    CHECK(enforce_pmc(1e-5, 1e-5, 1e-10, 2.5e-15, true, 0.01) == doctest::Approx(3.535e-5).epsilon(1e-12));

    Draw d(3);
    for (int i = 0; i < 1000; ++i) {
      const double p1 = d.log_uniform(1e-6, 1e2), p2 = d.log_uniform(1e-6, 1e2);
      const double h1 = d.log_uniform(1e-14, 1e-6), jam = d.log_uniform(1e-16, 1e-6);
      const bool on = d.uniform() < 0.5;
      CHECK(pmc_satisfied(p1, enforce_pmc(p1, p2, h1, jam, on, 0.01), h1, jam, on));
    }
  }

  TEST_CASE("energy efficiency") {
    CHECK(energy_efficiency({0.0, 5.0, 3, 1.0, 0.1}) == 0.0);
    CHECK(energy_efficiency({80e6, 2.0, 7, 1.0, 0.1}) == doctest::Approx(9.999988750012657).epsilon(1e-12));
    const EEInputs base{80e6, 2.0, 7, 1.0, 0.1};
    auto with = [&](auto f) {
      auto in = base;
      f(in);
      return energy_efficiency(in);
    };
    const double ee = energy_efficiency(base);
    CHECK(with([](EEInputs& in) { in.total_rate_bps *= 2; }) > ee);
    CHECK(with([](EEInputs& in) { in.total_tx_power_w *= 2; }) < ee);
    CHECK(with([](EEInputs& in) { in.active_rrh_count += 1; }) < ee);
    CHECK(with([](EEInputs& in) { in.static_power_w *= 2; }) < ee);
    CHECK(with([](EEInputs& in) { in.epsilon_w_per_bps *= 2; }) < ee);
    double prev = 0.0;
    for (double s : {1.0, 0.1, 0.01, 0.001}) {
      const double v = energy_efficiency({80e6, 2.0 * s, 7, s, 0.1 * s});
      CHECK(v > prev);
      prev = v;
    }
  }

  TEST_CASE("required and average rate") {
    CHECK(required_rate(1, 5e6, 123.0) == 5e6);
    CHECK(required_rate(2, 5e6, 4e6) == 6e6);
    CHECK(required_rate(2, 5e6, 11e6) == 0.0);
    CHECK(update_avg_rate(1, 9e9, 3e6) == 3e6);
    CHECK(update_avg_rate(2, 4e6, 6e6) == 5e6);

    Draw d(4);
    for (int trial = 0; trial < 200; ++trial) {
      const double target = d.log_uniform(1e5, 1e7);
      double avg = 0.0, exact_avg = 0.0;
      for (int i = 1; i <= 10; ++i) {
        // Achieving exactly the requirement lands on target every slot.
        exact_avg = update_avg_rate(i, exact_avg, required_rate(i, target, exact_avg));
        CHECK(rel(exact_avg, target) < 1e-12);
        // Falling behind raises the next requirement above target.
        avg = update_avg_rate(i, avg, d.uniform() * target);
        if (avg < target) CHECK(required_rate(i + 1, target, avg) > target);
      }
    }
  }

  TEST_CASE("multi-antenna rate and power") {
    // p1 h1^2 = p2 h2^2 = sigma^2 + jam = 1e-14: W log2(3), frozen from the formula.
    CHECK(mat_rate(1e-4, 1e-10, 1e-4, 1e-10, 0.5e-14, 0.5e-14, kW) ==
          doctest::Approx(990601.5629507225).epsilon(1e-12));
    CHECK(mat_rate(1e-4, 1e-10, 0.0, 1e-10, kNoise, 1e-15, kW) ==
          doctest::Approx(rate_single({1e-4, 1e-10, kNoise, 1e-15, true}, kW)).epsilon(1e-14));
    CHECK(mat_power(2.0 * kW, 1e-4, 1e-10, 1e-10, 0.5e-14, 0.5e-14, kW) == doctest::Approx(2e-4).epsilon(1e-12));
    CHECK(mat_power(1e3, 1e-4, 1e-10, 1e-10, kNoise, 0.0, kW) == 0.0);
    double prev = -1.0;
    for (double p2 = 0.0; p2 < 1e-3; p2 += 1e-5) {
      const double r = mat_rate(1e-4, 1e-10, p2, 1e-11, kNoise, 1e-14, kW);
      CHECK(r >= prev);
      prev = r;
    }
  }
}
