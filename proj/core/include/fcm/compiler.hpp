#pragma once

// Translation of a case model into a net: global places, one counter per
// class, one place per object configuration and per control-flow arc, and
// transitions for gateways, start events, activities and termination.

#include "fcm/cpn.hpp"
#include "fcm/model.hpp"

#include "json.hpp"

#include <cstddef>
#include <map>
#include <string>

namespace fcm {

struct CompileReport
{
    std::size_t places = 0;
    std::size_t transitions = 0;
    std::map<std::string, std::size_t> placesByRole;
    std::map<std::string, std::size_t> transitionsByOrigin;
    /// Keyed by fragment id; termination transitions under "termination".
    std::map<std::string, std::size_t> transitionsByFragment;
};

nlohmann::json to_json(const CompileReport& report);

struct Compilation
{
    cpn::Net net;
    CompileReport report;
};

/// Validates the model, applies goal-guard augmentation and translates it.
/// Throws CompileError(InvalidModel) listing violations of invalid models.
Compilation compile(const CaseModel& model);

/// The net with all places but no transitions.
cpn::Net build_places(const CaseModel& model);

/// Transition for one (input set, output set) pair of an activity. `places`
/// is the result of build_places. Throws CompileError.
cpn::Transition translate_activity(const CaseModel& model, const cpn::Net& places, const Fragment& fragment,
                                   const Node& activity, std::size_t inputSet, std::size_t outputSet);

cpn::Transition translate_start_event(const CaseModel& model, const cpn::Net& places, const Fragment& fragment,
                                      const Node& event, std::size_t outputSet);

cpn::Transition translate_gateway(const cpn::Net& places, const Fragment& fragment, const Flow& in, const Flow& out);

cpn::Transition translate_termination(const CaseModel& model, const cpn::Net& places, const DataCondition& condition,
                                      std::size_t index);

std::string control_flow_place_id(const std::string& fragment, const Flow& flow);

/// Graphviz rendering: places as ellipses, transitions as boxes.
std::string export_dot(const cpn::Net& net);

} // namespace fcm
