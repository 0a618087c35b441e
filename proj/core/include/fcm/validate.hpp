#pragma once

#include "fcm/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fcm {

enum class ViolationCode {
    // domain model and object life cycles
    DuplicateClass,
    CaseClassCount,
    UnknownClass,
    SelfAssociation,
    DuplicateAssociation,
    BoundsOrder,
    UpperSymmetry,
    NonExistentialAssociation, // A1
    ManyToManyAssociation,     // A2
    DuplicateState,
    OlcUnknownState,
    DuplicateOlcTransition,
    GuardMismatch,
    DuplicateAttribute,
    // fragments
    DuplicateFragment,
    NoActivities,
    DuplicateNode,
    UnknownNode,
    Acyclicity,
    ActivityIncoming,
    SingleOutgoing,
    GatewayWithoutPredecessor,
    FlowIntoStartEvent,
    StartEventCount,
    EntryActivity,
    MissingIOSets,
    MisplacedIOSets,
    UnknownConfiguration,
    DuplicateClassInSet,
    // case model
    DependentWithoutSupporter,
    SetReadRequired,
    ReferenceObject,
    InvalidStateChange,
    InvalidCollectionWrite,
    NoTerminationCondition,
    EmptyTerminationCondition,
};

std::string_view to_string(ViolationCode code);

struct Violation
{
    ViolationCode code;
    /// What the violation is about: a class pair "A-B", "fragment/node", ...
    std::string subject;
    std::string message;
};

std::vector<Violation> validate_domain_model(const CaseModel& model);
std::vector<Violation> validate_fragments(const CaseModel& model);
std::vector<Violation> validate_case_model(const CaseModel& model);

/// All three validators in order.
std::vector<Violation> validate(const CaseModel& model);

/// Topological order of the fragment's nodes, or nullopt if the control
/// flow has a cycle (or references unknown nodes).
std::optional<std::vector<std::string>> topological_order(const Fragment& fragment);

} // namespace fcm
