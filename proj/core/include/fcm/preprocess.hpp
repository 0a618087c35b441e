#pragma once

#include "fcm/model.hpp"

#include <set>
#include <string>
#include <string_view>

namespace fcm {

/// States of `supporter` in which some activity or start event creates a
/// `dependent` object in the supporter's context: the supporter is read,
/// updated from, or co-created in that state. Throws UnknownClass.
std::set<std::string> supporting_states(const CaseModel& model, std::string_view supporter,
                                        std::string_view dependent);

/// Attaches goal guards to life-cycle transitions that irreversibly leave
/// the states in which dependents can still be added. Idempotent.
CaseModel augment_goal_guards(CaseModel model);

} // namespace fcm
