#include "dasjam/phy_math.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dasjam::phy {

namespace {

double interference(double noise_w, double jam_w, bool jam_active) {
  return noise_w + (jam_active ? jam_w : 0.0);
}

double shannon(double sinr, double subband_bw_hz) {
  return subband_bw_hz * std::log1p(sinr) / std::numbers::ln2;
}

// 2^(rate / W) - 1: the SINR a rate needs. Overflows to +inf.
double sinr_for_rate(double rate_bps, double subband_bw_hz) {
  return std::expm1(rate_bps / subband_bw_hz * std::numbers::ln2);
}

}  // namespace

double rate_single(const LinkBudget& b, double subband_bw_hz) {
  if (b.power_w <= 0.0) return 0.0;
  return shannon(b.power_w * b.gain_sq / interference(b.noise_w, b.jam_w, b.jam_active),
                 subband_bw_hz);
}

double rate_second_user(double p1_w, double p2_w, double gain2_sq, double noise_w, double jam2_w,
                        bool jam_active, double subband_bw_hz) {
  if (p2_w <= 0.0) return 0.0;
  const double denom = p1_w * gain2_sq + interference(noise_w, jam2_w, jam_active);
  return shannon(p2_w * gain2_sq / denom, subband_bw_hz);
}

double power_for_rate_single(double rate_bps, double gain_sq, double noise_plus_jam_w,
                             double subband_bw_hz) {
  if (rate_bps <= 0.0) return 0.0;
  return noise_plus_jam_w / gain_sq * sinr_for_rate(rate_bps, subband_bw_hz);
}

double power_for_rate_second(double deficit_bps, double p1_w, double gain2_sq, double noise_w,
                             double jam2_w, bool jam_active, double subband_bw_hz) {
  if (deficit_bps <= 0.0) return 0.0;
  const double denom = p1_w * gain2_sq + interference(noise_w, jam2_w, jam_active);
  return sinr_for_rate(deficit_bps, subband_bw_hz) * denom / gain2_sq;
}

bool sic_feasible(double h1, double h2, double g1, double g2, bool jam_active) {
  if (jam_active) return h1 * g2 > h2 * g1;
  return h1 > h2;
}

double sinr_second_at_first(double p1_w, double p2_w, double h1_sq, double noise_w, double jam1_w) {
  return p2_w * h1_sq / (p1_w * h1_sq + noise_w + jam1_w);
}

double sinr_second_at_second(double p1_w, double p2_w, double h2_sq, double noise_w, double jam2_w) {
  return p2_w * h2_sq / (p1_w * h2_sq + noise_w + jam2_w);
}

bool pmc_satisfied(double p1_w, double p2_w, double h1_sq, double jam1_w, bool jam_active) {
  if (jam_active) return p1_w * h1_sq + jam1_w < p2_w * h1_sq;
  return p1_w < p2_w;
}

double enforce_pmc(double p1_w, double p2_w, double h1_sq, double jam1_w, bool jam_active,
                   double margin) {
  if (pmc_satisfied(p1_w, p2_w, h1_sq, jam1_w, jam_active)) return p2_w;
  if (jam_active) return (1.0 + margin) * (p1_w * h1_sq + jam1_w) / h1_sq;
  return (1.0 + margin) * p1_w;
}

double energy_efficiency(const EEInputs& in) {
  if (in.total_rate_bps <= 0.0) return 0.0;
  const double denom = in.epsilon_w_per_bps * in.total_rate_bps + in.total_tx_power_w +
                       in.active_rrh_count * in.static_power_w;
  if (denom <= 0.0) return 0.0;
  return in.total_rate_bps / denom;
}

double required_rate(int slot, double target_bps, double avg_prev_bps) {
  if (slot <= 1) return std::max(0.0, target_bps);
  return std::max(0.0, slot * target_bps - (slot - 1) * avg_prev_bps);
}

double update_avg_rate(int slot, double avg_prev_bps, double achieved_bps) {
  if (slot <= 1) return achieved_bps;
  const double w = 1.0 / slot;
  return (1.0 - w) * avg_prev_bps + w * achieved_bps;
}

double mat_rate(double p_r1_w, double h_r1_sq, double p_r2_w, double h_r2_sq, double noise_w,
                double jam_w, double subband_bw_hz) {
  const double rx = p_r1_w * h_r1_sq + p_r2_w * h_r2_sq;
  if (rx <= 0.0) return 0.0;
  return shannon(rx / (jam_w + noise_w), subband_bw_hz);
}

double mat_power(double required_bps, double p_r1_w, double h_r1_sq, double h_r2_sq,
                 double noise_w, double jam_w, double subband_bw_hz) {
  if (required_bps <= 0.0) return 0.0;
  const double needed = sinr_for_rate(required_bps, subband_bw_hz) * (noise_w + jam_w);
  return std::max(0.0, (needed - p_r1_w * h_r1_sq) / h_r2_sq);
}

}  // namespace dasjam::phy
