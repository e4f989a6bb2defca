#include "dasjam/scenario.hpp"

#include <cmath>
#include <numbers>

namespace dasjam {

namespace {

// Decay of the tap powers in units of tap index; 8 taps keep ~98% of the
// untruncated profile's energy.
constexpr double kTapDecay = 2.0;

}  // namespace

void ChannelParams::validate() const {
  if (num_subbands < 1) throw InvalidConfig("num_subbands must be >= 1");
  if (!(pathloss_exponent > 2.0)) throw InvalidConfig("pathloss_exponent must be > 2");
  if (num_taps < 1) throw InvalidConfig("num_taps must be >= 1");
  if (!(bandwidth_hz > 0.0)) throw InvalidConfig("bandwidth_hz must be > 0");
  if (!(noise_psd_w_per_hz > 0.0)) throw InvalidConfig("noise_psd_w_per_hz must be > 0");
  if (shadowing_std_db < 0.0) throw InvalidConfig("shadowing_std_db must be >= 0");
  if (rms_delay_spread_s < 0.0) throw InvalidConfig("rms_delay_spread_s must be >= 0");
  if (!(min_distance_m > 0.0)) throw InvalidConfig("min_distance_m must be > 0");
}

ChannelRealization::ChannelRealization(int users, int subbands, int rrhs, double noise)
    : num_users(users),
      num_subbands(subbands),
      num_rrhs(rrhs),
      noise_w(noise),
      user_rrh(static_cast<std::size_t>(rrhs), Eigen::ArrayXXd::Zero(users, subbands)),
      jammer_user(Eigen::ArrayXXd::Zero(users, subbands)),
      rrh_jammer(Eigen::ArrayXXd::Zero(subbands, rrhs)) {}

TappedDelayLine TappedDelayLine::exponential(int num_taps, double rms_delay_spread_s) {
  TappedDelayLine tdl;
  const Eigen::ArrayXd index = Eigen::ArrayXd::LinSpaced(num_taps, 0.0, num_taps - 1.0);
  Eigen::ArrayXd p = (-index / kTapDecay).exp();
  p /= p.sum();
  tdl.powers = p.matrix();

  // RMS spread of the profile measured in tap units, then stretch the tap
  // spacing so the physical spread matches the requested value.
  const double mean = (p * index).sum();
  const double rms_taps = std::sqrt((p * index.square()).sum() - mean * mean);
  const double spacing = rms_taps > 0.0 ? rms_delay_spread_s / rms_taps : 0.0;
  tdl.delays_s = (index * spacing).matrix();
  return tdl;
}

double TappedDelayLine::rms_delay_spread() const {
  const double mean = powers.dot(delays_s);
  const double second = powers.dot(delays_s.cwiseProduct(delays_s));
  return std::sqrt(std::max(0.0, second - mean * mean));
}

Eigen::MatrixXcd TappedDelayLine::subband_response(int num_subbands, double bandwidth_hz) const {
  const double spacing = bandwidth_hz / num_subbands;
  Eigen::MatrixXcd m(num_subbands, delays_s.size());
  for (int n = 0; n < num_subbands; ++n) {
    const double f = (n + 0.5) * spacing - bandwidth_hz / 2.0;
    for (Eigen::Index l = 0; l < delays_s.size(); ++l) {
      m(n, l) = std::polar(1.0, -2.0 * std::numbers::pi * f * delays_s(l));
    }
  }
  return m;
}

bool in_hexagon(const Eigen::Vector2d& p, double radius) {
  const double ax = std::abs(p.x());
  const double ay = std::abs(p.y());
  const double s3 = std::numbers::sqrt3;
  return ay <= s3 / 2.0 * radius && s3 * ax + ay <= s3 * radius;
}

std::vector<Eigen::Vector2d> place_rrhs(int num_rrhs, double cell_radius) {
  if (num_rrhs < 1) throw InvalidConfig("number of RRHs must be >= 1");
  std::vector<Eigen::Vector2d> out;
  out.reserve(static_cast<std::size_t>(num_rrhs));
  out.emplace_back(0.0, 0.0);
  const int ring = num_rrhs - 1;
  const double rho = 2.0 * cell_radius / 3.0;
  for (int i = 0; i < ring; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / ring;
    out.emplace_back(rho * std::cos(angle), rho * std::sin(angle));
  }
  return out;
}

namespace {

Eigen::Vector2d uniform_in_hexagon(double radius, Rng& rng) {
  const double half_height = std::numbers::sqrt3 / 2.0 * radius;
  std::uniform_real_distribution<double> ux(-radius, radius);
  std::uniform_real_distribution<double> uy(-half_height, half_height);
  for (;;) {
    Eigen::Vector2d p(ux(rng), uy(rng));
    if (in_hexagon(p, radius)) return p;
  }
}

}  // namespace

Placement drop_positions(int num_users, double cell_radius, Rng& rng) {
  Placement out;
  out.users.reserve(static_cast<std::size_t>(num_users));
  for (int k = 0; k < num_users; ++k) out.users.push_back(uniform_in_hexagon(cell_radius, rng));
  out.jammer = uniform_in_hexagon(cell_radius, rng);
  return out;
}

CellGeometry make_geometry(int num_rrhs, int num_users, double cell_radius, Rng& rng) {
  CellGeometry geo;
  geo.cell_radius = cell_radius;
  geo.rrh_positions = place_rrhs(num_rrhs, cell_radius);
  auto placement = drop_positions(num_users, cell_radius, rng);
  geo.user_positions = std::move(placement.users);
  geo.jammer_position = placement.jammer;
  return geo;
}

double pathloss(double distance_m, const ChannelParams& params) {
  return std::pow(std::max(distance_m, params.min_distance_m), -params.pathloss_exponent);
}

Eigen::VectorXcd sample_fading(const TappedDelayLine& tdl, const Eigen::MatrixXcd& response,
                               Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd taps(tdl.powers.size());
  for (Eigen::Index l = 0; l < taps.size(); ++l) {
    const double s = std::sqrt(tdl.powers(l) / 2.0);
    const double re = normal(rng);
    const double im = normal(rng);
    taps(l) = {s * re, s * im};
  }
  return response * taps;
}

namespace {

// Amplitude gain per subband for one link.
Eigen::ArrayXd link_gain(double distance, const ChannelParams& params, const TappedDelayLine& tdl,
                         const Eigen::MatrixXcd& response, Rng& rng) {
  std::normal_distribution<double> shadow(0.0, params.shadowing_std_db);
  const double shadow_db = params.shadowing_std_db > 0.0 ? shadow(rng) : 0.0;
  const double large_scale = std::sqrt(pathloss(distance, params) * std::pow(10.0, shadow_db / 10.0));
  if (!params.rayleigh_fading) {
    return Eigen::ArrayXd::Constant(params.num_subbands, large_scale);
  }
  return large_scale * sample_fading(tdl, response, rng).array().abs();
}

}  // namespace

ChannelRealization generate_channel(const CellGeometry& geometry, const ChannelParams& params,
                                    const ChannelParams& jammer_link_params, Rng& rng) {
  params.validate();
  jammer_link_params.validate();
  if (jammer_link_params.num_subbands != params.num_subbands) {
    throw InvalidConfig("jammer links must use the same subband grid");
  }
  const int users = static_cast<int>(geometry.user_positions.size());
  const int rrhs = static_cast<int>(geometry.rrh_positions.size());
  const int subbands = params.num_subbands;

  const auto tdl = TappedDelayLine::exponential(params.num_taps, params.rms_delay_spread_s);
  const auto response = tdl.subband_response(subbands, params.bandwidth_hz);
  const auto jam_tdl =
      TappedDelayLine::exponential(jammer_link_params.num_taps, jammer_link_params.rms_delay_spread_s);
  const auto jam_response = jam_tdl.subband_response(subbands, jammer_link_params.bandwidth_hz);

  ChannelRealization ch(users, subbands, rrhs, params.noise_power_w());
  for (int k = 0; k < users; ++k) {
    const auto& u = geometry.user_positions[static_cast<std::size_t>(k)];
    for (int r = 0; r < rrhs; ++r) {
      const double d = (u - geometry.rrh_positions[static_cast<std::size_t>(r)]).norm();
      ch.user_rrh[static_cast<std::size_t>(r)].row(k) = link_gain(d, params, tdl, response, rng).transpose();
    }
  }
  for (int k = 0; k < users; ++k) {
    const double d = (geometry.user_positions[static_cast<std::size_t>(k)] - geometry.jammer_position).norm();
    ch.jammer_user.row(k) = link_gain(d, jammer_link_params, jam_tdl, jam_response, rng).transpose();
  }
  for (int r = 0; r < rrhs; ++r) {
    const double d = (geometry.rrh_positions[static_cast<std::size_t>(r)] - geometry.jammer_position).norm();
    ch.rrh_jammer.col(r) = link_gain(d, jammer_link_params, jam_tdl, jam_response, rng);
  }
  return ch;
}

}  // namespace dasjam
