#pragma once

// Small hand-built models for unit tests.

#include "fcm/model.hpp"

#include <string>

namespace fcm::testing {

inline IOSet io(std::initializer_list<IOEntry> entries)
{
    return IOSet{entries};
}

inline ClassDecl chain_class(const std::string& name, std::initializer_list<std::string> states, bool caseClass = false)
{
    ClassDecl c;
    c.name = name;
    c.isCaseClass = caseClass;
    c.olc.states = states;
    for (std::size_t k = 0; k + 1 < c.olc.states.size(); ++k)
        c.olc.transitions.push_back({c.olc.states[k], c.olc.states[k + 1], {}});
    return c;
}

/// Case class A and class B. A start event creates an A; an entry activity
/// creates a B reading the A.
inline CaseModel two_class_model(Bounds aPerB, Bounds bPerA)
{
    CaseModel m;
    m.classes.push_back(chain_class("A", {"a0", "a1"}, true));
    m.classes.push_back(chain_class("B", {"b0"}));
    m.associations.push_back({"A", "B", aPerB, bPerA});
    Fragment f;
    f.id = "f";
    f.nodes = {{"s", NodeKind::StartEvent, "start"}, {"close", NodeKind::Activity, "close"}};
    f.flows = {{"s", "close"}};
    f.outputSets["s"] = {io({{"A", "a0"}})};
    f.inputSets["close"] = {io({{"A", "a0"}})};
    f.outputSets["close"] = {io({{"A", "a1"}})};
    Fragment g;
    g.id = "g";
    g.nodes = {{"add", NodeKind::Activity, "add b"}};
    g.inputSets["add"] = {io({{"A", "a0"}})};
    g.outputSets["add"] = {io({{"A", "a0"}, {"B", "b0"}})};
    m.fragments = {f, g};
    m.terminationConditions = {{{{"A", "a1"}}}};
    return m;
}

/// Start event followed by a gateway with the given fan-out into activities
/// that each read the single case object; `fanIn` activities lead into the
/// gateway.
inline CaseModel gateway_model(int fanIn, int fanOut)
{
    CaseModel m;
    m.classes.push_back(chain_class("X", {"x"}, true));
    Fragment f;
    f.id = "f";
    f.nodes.push_back({"s", NodeKind::StartEvent, "start"});
    f.outputSets["s"] = {io({{"X", "x"}})};
    f.nodes.push_back({"fork", NodeKind::Gateway, "fork"});
    f.nodes.push_back({"g", NodeKind::Gateway, "g"});
    f.flows.push_back({"s", "fork"});
    for (int k = 0; k < fanIn; ++k) {
        auto id = "in" + std::to_string(k);
        f.nodes.push_back({id, NodeKind::Activity, id});
        f.flows.push_back({"fork", id});
        f.flows.push_back({id, "g"});
        f.inputSets[id] = {io({{"X", "x"}})};
        f.outputSets[id] = {io({{"X", "x"}})};
    }
    for (int k = 0; k < fanOut; ++k) {
        auto id = "out" + std::to_string(k);
        f.nodes.push_back({id, NodeKind::Activity, id});
        f.flows.push_back({"g", id});
        f.inputSets[id] = {io({{"X", "x"}})};
        f.outputSets[id] = {io({{"X", "x"}})};
    }
    m.fragments.push_back(f);
    m.terminationConditions = {{{{"X", "x"}}}};
    return m;
}

} // namespace fcm::testing
