#pragma once

#include <optional>
#include <vector>

#include "dasjam/assignment.hpp"

namespace dasjam::mat {

/// Adds the EE-best second RRH to the subband of outage user k (the first
/// user of `assignments[index]`), planning for a jammed subband. The first
/// RRH keeps its power. Returns the augmented assignment, or nullopt when
/// there is no usable second RRH.
std::optional<Assignment> augment_outage_user(const SlotContext& ctx, const std::vector<Assignment>& assignments,
                                              int index);

/// A user is in outage when its running average missed the target at the
/// end of the previous slot, or when the OMA phase could not plan its
/// required rate this slot.
bool in_outage(const SlotContext& ctx, const Assignment& a);

/// OMA phase followed by multi-antenna augmentation of every outage user.
std::vector<Assignment> run_mat_timeslot(const SlotContext& ctx);

}  // namespace dasjam::mat
