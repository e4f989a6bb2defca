#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace dasjam {

using Rng = std::mt19937_64;

/// Raised for any parameter combination the simulator refuses to run.
class InvalidConfig : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct CellGeometry {
  double cell_radius = 500.0;
  std::vector<Eigen::Vector2d> rrh_positions;
  std::vector<Eigen::Vector2d> user_positions;
  Eigen::Vector2d jammer_position = Eigen::Vector2d::Zero();
};

struct ChannelParams {
  double bandwidth_hz = 10e6;
  int num_subbands = 16;
  double noise_psd_w_per_hz = 4e-21;
  double pathloss_exponent = 3.76;
  double shadowing_std_db = 8.0;
  double rms_delay_spread_s = 500e-9;
  int num_taps = 8;
  double min_distance_m = 10.0;
  // Disabling fading leaves |fading(n)| = 1 on every subband.
  bool rayleigh_fading = true;

  double subband_bandwidth_hz() const { return bandwidth_hz / num_subbands; }
  double noise_power_w() const { return noise_psd_w_per_hz * bandwidth_hz / num_subbands; }
  void validate() const;
};

/// Amplitude gains of one drop. Held fixed over the whole horizon.
///
/// Layout: `user_rrh[r]` is K x S (user, subband), `jammer_user` is K x S,
/// `rrh_jammer` is S x R.
struct ChannelRealization {
  int num_users = 0;
  int num_subbands = 0;
  int num_rrhs = 0;
  double noise_w = 0.0;
  std::vector<Eigen::ArrayXXd> user_rrh;
  Eigen::ArrayXXd jammer_user;
  Eigen::ArrayXXd rrh_jammer;

  ChannelRealization() = default;
  ChannelRealization(int users, int subbands, int rrhs, double noise);

  double h(int k, int n, int r) const { return user_rrh[r](k, n); }
  double h_sq(int k, int n, int r) const { return h(k, n, r) * h(k, n, r); }
  double g(int k, int n) const { return jammer_user(k, n); }
  double g_sq(int k, int n) const { return g(k, n) * g(k, n); }
  double h_jammer(int n, int r) const { return rrh_jammer(n, r); }
  double h_jammer_sq(int n, int r) const { return h_jammer(n, r) * h_jammer(n, r); }
};

/// Exponential power-delay profile sampled on `num_taps` uniformly spaced taps.
struct TappedDelayLine {
  Eigen::VectorXd delays_s;
  Eigen::VectorXd powers;  // sums to 1

  static TappedDelayLine exponential(int num_taps, double rms_delay_spread_s);
  double rms_delay_spread() const;
  /// S x L matrix mapping tap amplitudes to per-subband frequency response.
  Eigen::MatrixXcd subband_response(int num_subbands, double bandwidth_hz) const;
};

/// Flat-top regular hexagon of circumradius `radius` centred at the origin.
bool in_hexagon(const Eigen::Vector2d& p, double radius);

std::vector<Eigen::Vector2d> place_rrhs(int num_rrhs, double cell_radius);

struct Placement {
  std::vector<Eigen::Vector2d> users;
  Eigen::Vector2d jammer;
};

Placement drop_positions(int num_users, double cell_radius, Rng& rng);

CellGeometry make_geometry(int num_rrhs, int num_users, double cell_radius, Rng& rng);

double pathloss(double distance_m, const ChannelParams& params);

/// One realisation of the per-subband frequency response of a Rayleigh TDL.
Eigen::VectorXcd sample_fading(const TappedDelayLine& tdl, const Eigen::MatrixXcd& response,
                               Rng& rng);

ChannelRealization generate_channel(const CellGeometry& geometry, const ChannelParams& params,
                                    const ChannelParams& jammer_link_params, Rng& rng);

}  // namespace dasjam
