#pragma once

// Closed-form link expressions shared by every scheduler and by the
// ground-truth evaluation. All functions are pure.
//
// Conventions: powers in W, rates in bit/s, gains passed squared unless the
// parameter name says "amplitude". `jam_w` is the jamming power perceived at
// the receiver (P_J * g^2) and only counts when `jam_active` is set.

namespace dasjam::phy {

struct LinkBudget {
  double power_w = 0.0;
  double gain_sq = 0.0;
  double noise_w = 0.0;
  double jam_w = 0.0;
  bool jam_active = false;
};

struct EEInputs {
  double total_rate_bps = 0.0;
  double total_tx_power_w = 0.0;
  int active_rrh_count = 0;
  double static_power_w = 0.0;
  double epsilon_w_per_bps = 0.0;
};

/// Shannon rate of a single (OMA or first NOMA) user.
double rate_single(const LinkBudget& budget, double subband_bw_hz);

/// Rate of the weaker NOMA user, which sees the first user's signal as noise.
double rate_second_user(double p1_w, double p2_w, double gain2_sq, double noise_w, double jam2_w,
                        bool jam_active, double subband_bw_hz);

/// Inverse of rate_single. Saturates to +inf when 2^(rate/W) overflows.
double power_for_rate_single(double rate_bps, double gain_sq, double noise_plus_jam_w,
                             double subband_bw_hz);

/// Inverse of rate_second_user in the second user's power.
double power_for_rate_second(double deficit_bps, double p1_w, double gain2_sq, double noise_w,
                             double jam2_w, bool jam_active, double subband_bw_hz);

/// Whether the first user can strip the second user's signal. Under jamming
/// this is the high-jam approximation h1*g2 > h2*g1; otherwise h1 > h2.
bool sic_feasible(double h1, double h2, double g1, double g2, bool jam_active);

/// SINR of the second user's signal as seen by the first user (exact, keeps noise).
double sinr_second_at_first(double p1_w, double p2_w, double h1_sq, double noise_w, double jam1_w);
/// SINR of the second user's signal at the second user (exact).
double sinr_second_at_second(double p1_w, double p2_w, double h2_sq, double noise_w, double jam2_w);

/// Raises p2 to (1 + margin) times the minimum satisfying the power
/// multiplexing condition when it is not already met.
double enforce_pmc(double p1_w, double p2_w, double h1_sq, double jam1_w, bool jam_active,
                   double margin);

/// True when the strict power multiplexing condition holds.
bool pmc_satisfied(double p1_w, double p2_w, double h1_sq, double jam1_w, bool jam_active);

double energy_efficiency(const EEInputs& in);

/// Rate a user must achieve in slot i (1-based) for its running average to
/// land on target. Clamped below at 0.
double required_rate(int slot, double target_bps, double avg_prev_bps);

/// Running average after slot i (1-based).
double update_avg_rate(int slot, double avg_prev_bps, double achieved_bps);

/// Rate of a user served on one subband by two RRHs whose powers add at the
/// receiver. The jam term is always included.
double mat_rate(double p_r1_w, double h_r1_sq, double p_r2_w, double h_r2_sq, double noise_w,
                double jam_w, double subband_bw_hz);

/// Power needed on the second RRH so that mat_rate reaches required_bps.
/// Clamped at 0 when the first RRH alone suffices.
double mat_power(double required_bps, double p_r1_w, double h_r1_sq, double h_r2_sq,
                 double noise_w, double jam_w, double subband_bw_hz);

}  // namespace dasjam::phy
