#include "dasjam/jammer.hpp"

namespace dasjam {

ReactiveJammer::ReactiveJammer(double threshold_w, double jam_power_w, const ChannelRealization& channel)
    : threshold_w_(threshold_w), jam_power_w_(jam_power_w), channel_(&channel) {
  if (!(threshold_w > 0.0)) throw InvalidConfig("jammer threshold must be > 0");
  if (jam_power_w < 0.0) throw InvalidConfig("jammer power must be >= 0");
}

double ReactiveJammer::received_power(int n, std::span<const RrhPower> contributions) const {
  double rx = 0.0;
  for (const auto& c : contributions) rx += c.power_w * channel_->h_jammer_sq(n, c.rrh);
  return rx;
}

bool ReactiveJammer::triggered(int n, std::span<const RrhPower> contributions) const {
  return received_power(n, contributions) > threshold_w_;
}

double ReactiveJammer::perceived_jam_power(int k, int n) const {
  return jam_power_w_ * channel_->g_sq(k, n);
}

double ReactiveJammer::boundary_power(int n, int r) const {
  return threshold_w_ / channel_->h_jammer_sq(n, r);
}

}  // namespace dasjam
