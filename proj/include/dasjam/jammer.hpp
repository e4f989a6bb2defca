#pragma once

#include <span>

#include "dasjam/scenario.hpp"

namespace dasjam {

/// Power radiated by one RRH on the subband under test.
struct RrhPower {
  int rrh = 0;
  double power_w = 0.0;
};

/// Ground-truth reactive jammer. Only the simulator holds one; schedulers see
/// outcomes through JammerStatistics and JamFeedback.
class ReactiveJammer {
public:
  ReactiveJammer(double threshold_w, double jam_power_w, const ChannelRealization& channel);

  /// Composite received power at the jammer on subband n.
  double received_power(int n, std::span<const RrhPower> contributions) const;

  /// Jams when the composite received power strictly exceeds the threshold.
  bool triggered(int n, std::span<const RrhPower> contributions) const;

  /// P_J * g_{k,n}^2.
  double perceived_jam_power(int k, int n) const;

  double threshold_w() const { return threshold_w_; }
  double jam_power_w() const { return jam_power_w_; }

  /// Power on (n, r) at which a lone RRH starts triggering: P_th / h_j^2.
  double boundary_power(int n, int r) const;

private:
  double threshold_w_;
  double jam_power_w_;
  const ChannelRealization* channel_;
};

}  // namespace dasjam
