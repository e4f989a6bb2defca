#include "dasjam/assignment.hpp"

#include <algorithm>

#include "dasjam/phy_math.hpp"

namespace dasjam {

UserLedger::UserLedger(int num_users, double target_bps)
    : users_(static_cast<std::size_t>(num_users), UserState{target_bps, 0.0, 0.0, 0.0}) {}

void UserLedger::begin_slot(int slot) {
  for (auto& u : users_) u.required_bps = phy::required_rate(slot, u.target_bps, u.avg_rate_bps);
}

void UserLedger::end_slot(int slot, const Eigen::VectorXd& achieved_bps, const Eigen::VectorXd& power_w) {
  for (std::size_t k = 0; k < users_.size(); ++k) {
    auto& u = users_[k];
    const auto i = static_cast<Eigen::Index>(k);
    u.avg_rate_bps = phy::update_avg_rate(slot, u.avg_rate_bps, achieved_bps(i));
    u.avg_power_w = phy::update_avg_rate(slot, u.avg_power_w, power_w(i));
  }
}

AllocationTotals AllocationTotals::of(const std::vector<Assignment>& assignments, int num_rrhs) {
  AllocationTotals t(num_rrhs);
  for (const auto& a : assignments) {
    t.rate_bps += a.predicted_rate_bps();
    t.power_w += a.total_power_w();
    t.rrh_active[static_cast<std::size_t>(a.rrh)] = true;
    if (a.extra) t.rrh_active[static_cast<std::size_t>(a.extra->rrh)] = true;
  }
  return t;
}

int AllocationTotals::active_rrhs() const {
  return static_cast<int>(std::count(rrh_active.begin(), rrh_active.end(), true));
}

int AllocationTotals::active_rrhs_with(int rrh) const {
  return active_rrhs() + (rrh_active[static_cast<std::size_t>(rrh)] ? 0 : 1);
}

double incremental_ee(const AllocationTotals& totals, double extra_rate_bps, double extra_power_w,
                      int beta, const SchedulerParams& params) {
  return phy::energy_efficiency({totals.rate_bps + extra_rate_bps, totals.power_w + extra_power_w, beta,
                                 params.static_power_w, params.epsilon_w_per_bps});
}

int find_first_user_assignment(const std::vector<Assignment>& assignments, int k) {
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i].first_user == k) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace dasjam
