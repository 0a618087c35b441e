#pragma once

// Brute-force reference semantics for nets, written separately from the
// kernel: every combination of tokens (and every subset of a configuration
// place for collection arcs) is tried and the guard is re-evaluated from
// scratch.

#include "fcm/cpn.hpp"

#include <cstddef>
#include <random>
#include <string>
#include <vector>

namespace fcm::testing {

std::vector<cpn::EnabledBinding> oracle_enabled(const cpn::Net& net, const cpn::Marking& marking);

cpn::Marking oracle_fire(const cpn::Net& net, const cpn::Marking& marking, cpn::TransitionIndex transition,
                         const cpn::Binding& binding);

/// Number of markings reachable from the initial marking, or 0 if more than
/// `limit` are found.
std::size_t oracle_state_count(const cpn::Net& net, std::size_t limit);

struct WalkResult
{
    int steps = 0;
    std::size_t maxObjects = 0;
    /// Empty when kernel and oracle agreed everywhere.
    std::string mismatch;
};

/// Random walk of at most `steps` firings from the initial marking. At each
/// marking the kernel's enabled bindings are compared with the oracle's, and
/// the chosen firing with the oracle's successor. Termination is chosen only
/// when nothing else is enabled.
WalkResult oracle_walk(const cpn::Net& net, std::mt19937& rng, int steps);

} // namespace fcm::testing
