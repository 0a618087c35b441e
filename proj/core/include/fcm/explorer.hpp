#pragma once

// Breadth-first exploration of the reachable markings of a net, with the
// structural invariants checked on every visited marking.

#include "fcm/cpn.hpp"

#include "json.hpp"

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace fcm {

enum class InvariantKind {
    AbstractState,
    SetTokens,
    TokenColor,
    CounterSoundness,
    AssociationsInObjects,
    ConfigurationUniqueness,
    UpperBound,
};

std::string_view to_string(InvariantKind kind);

struct InvariantViolation
{
    InvariantKind kind;
    std::string message;
};

std::vector<InvariantViolation> check_invariants(const cpn::Net& net, const cpn::Marking& marking);

struct ExploreLimits
{
    std::size_t maxStates = 100000;
    std::size_t maxDepth = std::numeric_limits<std::size_t>::max();
};

struct WitnessStep
{
    std::string transitionId;
    nlohmann::json binding;
};

struct ExploreReport
{
    std::size_t statesVisited = 0;
    std::size_t edges = 0;
    std::size_t maxDepth = 0;
    bool terminationReachable = false;
    bool truncated = false;
    /// Number of visited markings with at least one violation.
    std::size_t violatingStates = 0;
    /// The first violations found, with the depth of their marking.
    std::vector<std::pair<std::size_t, InvariantViolation>> violations;
    /// Shortest firing sequence to a terminated marking, if any.
    std::vector<WitnessStep> witness;
};

/// Deterministic for fixed limits.
ExploreReport explore(const cpn::Net& net, ExploreLimits limits = {});

nlohmann::json to_json(const ExploreReport& report);

} // namespace fcm
