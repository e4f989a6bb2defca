#include <doctest.h>

#include <vector>

#include "dasjam/jammer.hpp"

using namespace dasjam;

namespace {

ChannelRealization two_rrh_channel() {
  ChannelRealization ch(2, 2, 2, 2.5e-15);
  ch.rrh_jammer.setConstant(1e-4);  // h_j^2 = 1e-8
  ch.jammer_user << 5e-8, 1e-7, 2e-7, 4e-7;
  return ch;
}

}  // namespace

TEST_SUITE("jammer") {
  TEST_CASE("triggering") {
    const auto ch = two_rrh_channel();
    const ReactiveJammer j(1e-12, 1.0, ch);
    CHECK(j.boundary_power(0, 0) == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK_FALSE(j.triggered(0, std::vector<RrhPower>{}));
    CHECK_FALSE(j.triggered(0, std::vector<RrhPower>{{0, 0.0}}));
    CHECK(j.triggered(0, std::vector<RrhPower>{{0, 2e-4}}));
    CHECK(j.received_power(0, std::vector<RrhPower>{{0, 2e-4}}) == doctest::Approx(2e-12).epsilon(1e-12));
    CHECK_FALSE(j.triggered(0, std::vector<RrhPower>{{0, 0.6e-4}}));
    CHECK(j.triggered(0, std::vector<RrhPower>{{0, 0.6e-4}, {1, 0.6e-4}}));
    // Exactly at the threshold is not a strict exceedance.
    CHECK_FALSE(j.triggered(0, std::vector<RrhPower>{{0, 0.5e-4}, {1, 0.5e-4}}));
  }

  TEST_CASE("monotone in every contribution") {
    const auto ch = two_rrh_channel();
    const ReactiveJammer j(1e-12, 1.0, ch);
    for (double a = 0.0; a < 3e-4; a += 1e-5) {
      for (double b = 0.0; b < 3e-4; b += 1e-5) {
        if (j.triggered(1, std::vector<RrhPower>{{0, a}, {1, b}})) {
          CHECK(j.triggered(1, std::vector<RrhPower>{{0, a + 1e-5}, {1, b}}));
          CHECK(j.triggered(1, std::vector<RrhPower>{{0, a}, {1, b + 1e-5}}));
        }
      }
    }
  }

  TEST_CASE("perceived jamming power") {
    auto ch = two_rrh_channel();
    ch.jammer_user(0, 0) = 5e-8;  // g^2 = 2.5e-15
    CHECK(ReactiveJammer(1e-12, 0.0, ch).perceived_jam_power(0, 0) == 0.0);
    const double one = ReactiveJammer(1e-12, 1.0, ch).perceived_jam_power(0, 0);
    CHECK(one == doctest::Approx(2.5e-15).epsilon(1e-12));
    CHECK(ReactiveJammer(1e-12, 2.0, ch).perceived_jam_power(0, 0) == doctest::Approx(2.0 * one).epsilon(1e-15));
  }

  TEST_CASE("rejects bad parameters") {
    const auto ch = two_rrh_channel();
    CHECK_THROWS_AS(ReactiveJammer(0.0, 1.0, ch), InvalidConfig);
    CHECK_THROWS_AS(ReactiveJammer(1e-12, -1.0, ch), InvalidConfig);
  }
}
