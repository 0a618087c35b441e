#include "fcm/validate.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fcm {

std::string_view to_string(ViolationCode code)
{
    switch (code) {
    case ViolationCode::DuplicateClass: return "DuplicateClass";
    case ViolationCode::CaseClassCount: return "CaseClassCount";
    case ViolationCode::UnknownClass: return "UnknownClass";
    case ViolationCode::SelfAssociation: return "SelfAssociation";
    case ViolationCode::DuplicateAssociation: return "DuplicateAssociation";
    case ViolationCode::BoundsOrder: return "BoundsOrder";
    case ViolationCode::UpperSymmetry: return "UpperSymmetry";
    case ViolationCode::NonExistentialAssociation: return "NonExistentialAssociation";
    case ViolationCode::ManyToManyAssociation: return "ManyToManyAssociation";
    case ViolationCode::DuplicateState: return "DuplicateState";
    case ViolationCode::OlcUnknownState: return "OlcUnknownState";
    case ViolationCode::DuplicateOlcTransition: return "DuplicateOlcTransition";
    case ViolationCode::GuardMismatch: return "GuardMismatch";
    case ViolationCode::DuplicateAttribute: return "DuplicateAttribute";
    case ViolationCode::DuplicateFragment: return "DuplicateFragment";
    case ViolationCode::NoActivities: return "NoActivities";
    case ViolationCode::DuplicateNode: return "DuplicateNode";
    case ViolationCode::UnknownNode: return "UnknownNode";
    case ViolationCode::Acyclicity: return "Acyclicity";
    case ViolationCode::ActivityIncoming: return "ActivityIncoming";
    case ViolationCode::SingleOutgoing: return "SingleOutgoing";
    case ViolationCode::GatewayWithoutPredecessor: return "GatewayWithoutPredecessor";
    case ViolationCode::FlowIntoStartEvent: return "FlowIntoStartEvent";
    case ViolationCode::StartEventCount: return "StartEventCount";
    case ViolationCode::EntryActivity: return "EntryActivity";
    case ViolationCode::MissingIOSets: return "MissingIOSets";
    case ViolationCode::MisplacedIOSets: return "MisplacedIOSets";
    case ViolationCode::UnknownConfiguration: return "UnknownConfiguration";
    case ViolationCode::DuplicateClassInSet: return "DuplicateClassInSet";
    case ViolationCode::DependentWithoutSupporter: return "DependentWithoutSupporter";
    case ViolationCode::SetReadRequired: return "SetReadRequired";
    case ViolationCode::ReferenceObject: return "ReferenceObject";
    case ViolationCode::InvalidStateChange: return "InvalidStateChange";
    case ViolationCode::InvalidCollectionWrite: return "InvalidCollectionWrite";
    case ViolationCode::NoTerminationCondition: return "NoTerminationCondition";
    case ViolationCode::EmptyTerminationCondition: return "EmptyTerminationCondition";
    }
    return "Unknown";
}

namespace {

std::string pair_name(std::string_view a, std::string_view b)
{
    return std::string(a) + "-" + std::string(b);
}

bool configuration_exists(const CaseModel& model, std::string_view cls, std::string_view state)
{
    const auto* c = model.find_class(cls);
    return c && c->olc.has_state(state);
}

void check_bounds(std::vector<Violation>& out, std::string_view source, std::string_view target, const Bounds& b)
{
    if (b.lower <= b.goalLower && b.goalLower <= b.upper)
        return;
    out.push_back({ViolationCode::BoundsOrder, pair_name(source, target),
                   "bounds for " + std::string(source) + " per " + std::string(target) +
                       " must satisfy lower <= goal lower <= upper (got " + std::to_string(b.lower) + ", " +
                       std::to_string(b.goalLower) + ", " + std::to_string(b.upper) + ")"});
}

std::string set_subject(const Fragment& f, const Node& n, std::size_t in, std::size_t out)
{
    return f.id + "/" + n.id + " in" + std::to_string(in) + "/out" + std::to_string(out);
}

} // namespace

std::vector<Violation> validate_domain_model(const CaseModel& model)
{
    std::vector<Violation> out;

    std::set<std::string> names;
    for (const auto& c : model.classes)
        if (!names.insert(c.name).second)
            out.push_back({ViolationCode::DuplicateClass, c.name, "class " + c.name + " is declared twice"});

    auto caseClasses = std::count_if(model.classes.begin(), model.classes.end(),
                                     [](const ClassDecl& c) { return c.isCaseClass; });
    if (caseClasses != 1)
        out.push_back({ViolationCode::CaseClassCount, "",
                       "exactly one case class is required, found " + std::to_string(caseClasses)});

    std::set<std::pair<std::string, std::string>> seenPairs;
    for (const auto& a : model.associations) {
        auto subject = pair_name(a.classA, a.classB);
        bool known = true;
        for (const auto& name : {a.classA, a.classB}) {
            if (!model.find_class(name)) {
                out.push_back({ViolationCode::UnknownClass, subject, "constraint references unknown class " + name});
                known = false;
            }
        }
        if (!known)
            continue;
        if (a.classA == a.classB) {
            out.push_back({ViolationCode::SelfAssociation, subject, "associations of a class with itself are not supported"});
            continue;
        }
        auto key = std::minmax(a.classA, a.classB);
        if (!seenPairs.insert({key.first, key.second}).second)
            out.push_back({ViolationCode::DuplicateAssociation, subject,
                           "at most one association per pair of classes is supported"});

        check_bounds(out, a.classA, a.classB, a.aPerB);
        check_bounds(out, a.classB, a.classA, a.bPerA);

        bool upA = a.aPerB.upper > 0;
        bool upB = a.bPerA.upper > 0;
        if (upA != upB)
            out.push_back({ViolationCode::UpperSymmetry, subject,
                           "upper bounds must be positive in both directions or in neither"});
        if ((upA || upB) && a.aPerB.lower == 0 && a.bPerA.lower == 0)
            out.push_back({ViolationCode::NonExistentialAssociation, subject,
                           "A1: association " + subject + " is not existential; at least one lower bound must be positive"});
        if (a.aPerB.upper > 1 && a.bPerA.upper > 1)
            out.push_back({ViolationCode::ManyToManyAssociation, subject,
                           "A2: many-to-many association " + subject +
                               " is not supported; it can be reified by introducing an intermediate class"});
    }

    for (const auto& c : model.classes) {
        std::set<std::string> states;
        for (const auto& s : c.olc.states)
            if (!states.insert(s).second)
                out.push_back({ViolationCode::DuplicateState, c.name, "state " + s + " is declared twice"});

        std::set<std::pair<std::string, std::string>> seen;
        for (const auto& t : c.olc.transitions) {
            auto subject = c.name + ":" + t.from + "->" + t.to;
            if (!c.olc.has_state(t.from) || !c.olc.has_state(t.to))
                out.push_back({ViolationCode::OlcUnknownState, subject, "transition endpoint is not a state of " + c.name});
            if (!seen.insert({t.from, t.to}).second)
                out.push_back({ViolationCode::DuplicateOlcTransition, subject, "transition is declared twice"});
            for (const auto& g : t.guards) {
                if (!model.find_class(g.dependentClass)) {
                    out.push_back({ViolationCode::UnknownClass, subject, "guard references unknown class " + g.dependentClass});
                    continue;
                }
                auto expected = model.bounds(g.dependentClass, c.name).goalLower;
                if (g.minCount != expected)
                    out.push_back({ViolationCode::GuardMismatch, subject,
                                   "guard requires " + std::to_string(g.minCount) + " " + g.dependentClass +
                                       " objects but the goal lower bound is " + std::to_string(expected)});
            }
        }

        std::set<std::string> attrs;
        for (const auto& a : c.attributes)
            if (!attrs.insert(a.name).second)
                out.push_back({ViolationCode::DuplicateAttribute, c.name, "attribute " + a.name + " is declared twice"});
    }
    return out;
}

std::optional<std::vector<std::string>> topological_order(const Fragment& fragment)
{
    std::map<std::string, int> indegree;
    for (const auto& n : fragment.nodes)
        indegree[n.id] = 0;
    for (const auto& [src, tgt] : fragment.flows) {
        if (!indegree.count(src) || !indegree.count(tgt))
            return std::nullopt;
        ++indegree[tgt];
    }
    std::vector<std::string> order;
    std::vector<std::string> ready;
    for (const auto& n : fragment.nodes)
        if (indegree[n.id] == 0)
            ready.push_back(n.id);
    while (!ready.empty()) {
        auto node = ready.back();
        ready.pop_back();
        order.push_back(node);
        for (const auto& [src, tgt] : fragment.flows)
            if (src == node && --indegree[tgt] == 0)
                ready.push_back(tgt);
    }
    if (order.size() != indegree.size())
        return std::nullopt;
    return order;
}

std::vector<Violation> validate_fragments(const CaseModel& model)
{
    std::vector<Violation> out;
    std::set<std::string> fragmentIds;

    for (const auto& f : model.fragments) {
        if (!fragmentIds.insert(f.id).second)
            out.push_back({ViolationCode::DuplicateFragment, f.id, "fragment id is used twice"});

        std::set<std::string> nodeIds;
        std::size_t activities = 0;
        std::size_t startEvents = 0;
        for (const auto& n : f.nodes) {
            if (!nodeIds.insert(n.id).second)
                out.push_back({ViolationCode::DuplicateNode, f.id + "/" + n.id, "node id is used twice"});
            activities += n.kind == NodeKind::Activity;
            startEvents += n.kind == NodeKind::StartEvent;
        }
        if (activities == 0)
            out.push_back({ViolationCode::NoActivities, f.id, "a fragment needs at least one activity"});
        if (startEvents > 1)
            out.push_back({ViolationCode::StartEventCount, f.id,
                           "a fragment has at most one start event, found " + std::to_string(startEvents)});

        bool flowsKnown = true;
        for (const auto& [src, tgt] : f.flows) {
            auto subject = f.id + "/" + src + "->" + tgt;
            const auto* s = f.find_node(src);
            const auto* t = f.find_node(tgt);
            if (!s || !t) {
                out.push_back({ViolationCode::UnknownNode, subject, "flow references an unknown node"});
                flowsKnown = false;
                continue;
            }
            if (t->kind == NodeKind::StartEvent)
                out.push_back({ViolationCode::FlowIntoStartEvent, subject, "start events cannot have incoming flows"});
        }
        if (flowsKnown && !topological_order(f))
            out.push_back({ViolationCode::Acyclicity, f.id, "control flow must be acyclic"});

        std::size_t entryActivities = 0;
        for (const auto& n : f.nodes) {
            auto subject = f.id + "/" + n.id;
            auto preds = f.predecessors(n.id).size();
            auto succs = f.successors(n.id).size();
            if (n.kind == NodeKind::Activity && preds > 1)
                out.push_back({ViolationCode::ActivityIncoming, subject, "activities have at most one incoming flow"});
            if (n.kind != NodeKind::Gateway && succs > 1)
                out.push_back({ViolationCode::SingleOutgoing, subject,
                               "activities and start events have at most one outgoing flow"});
            if (n.kind == NodeKind::Gateway && preds == 0)
                out.push_back({ViolationCode::GatewayWithoutPredecessor, subject, "gateways need a predecessor"});
            if (n.kind == NodeKind::Activity && preds == 0)
                ++entryActivities;

            bool hasInputs = f.inputSets.count(n.id) > 0;
            bool hasOutputs = f.outputSets.count(n.id) > 0;
            if (n.kind == NodeKind::Activity) {
                if (f.inputs_of(n.id).empty() || f.outputs_of(n.id).empty())
                    out.push_back({ViolationCode::MissingIOSets, subject,
                                   "activities need at least one input set and one output set"});
            } else if (n.kind == NodeKind::StartEvent) {
                if (hasInputs)
                    out.push_back({ViolationCode::MisplacedIOSets, subject, "start events have no input sets"});
                if (f.outputs_of(n.id).empty())
                    out.push_back({ViolationCode::MissingIOSets, subject, "start events need at least one output set"});
            } else if (hasInputs || hasOutputs) {
                out.push_back({ViolationCode::MisplacedIOSets, subject, "gateways have no input or output sets"});
            }
        }
        if (startEvents == 0 && entryActivities != 1)
            out.push_back({ViolationCode::EntryActivity, f.id,
                           "without a start event exactly one activity must lack incoming flow, found " +
                               std::to_string(entryActivities)});

        for (const auto* sets : {&f.inputSets, &f.outputSets}) {
            for (const auto& [node, list] : *sets) {
                if (!f.find_node(node)) {
                    out.push_back({ViolationCode::UnknownNode, f.id + "/" + node, "input/output sets for unknown node"});
                    continue;
                }
                for (const auto& set : list) {
                    std::set<std::string> classes;
                    for (const auto& e : set.entries) {
                        auto subject = f.id + "/" + node;
                        if (!configuration_exists(model, e.cls, e.state))
                            out.push_back({ViolationCode::UnknownConfiguration, subject,
                                           to_string(e.configuration()) + " is not a declared object configuration"});
                        if (!classes.insert(e.cls).second)
                            out.push_back({ViolationCode::DuplicateClassInSet, subject,
                                           "class " + e.cls + " appears more than once in one set"});
                    }
                }
            }
        }
    }
    return out;
}

std::vector<Violation> validate_case_model(const CaseModel& model)
{
    std::vector<Violation> out;

    if (model.terminationConditions.empty())
        out.push_back({ViolationCode::NoTerminationCondition, "", "at least one termination condition is required"});
    for (std::size_t i = 0; i < model.terminationConditions.size(); ++i) {
        const auto& d = model.terminationConditions[i];
        auto subject = "termination/" + std::to_string(i);
        if (d.configurations.empty())
            out.push_back({ViolationCode::EmptyTerminationCondition, subject, "termination conditions cannot be empty"});
        for (const auto& c : d.configurations)
            if (!configuration_exists(model, c.cls, c.state))
                out.push_back({ViolationCode::UnknownConfiguration, subject,
                               to_string(c) + " is not a declared object configuration"});
    }

    const IOSet noInput;
    for (const auto& f : model.fragments) {
        for (const auto& n : f.nodes) {
            if (n.kind == NodeKind::Gateway)
                continue;

            // Reference objects for collection reads.
            for (const auto& in : f.inputs_of(n.id)) {
                for (const auto& e : in.entries) {
                    if (!e.collection)
                        continue;
                    auto candidates = reference_candidates(model, in, e.cls);
                    if (candidates.size() != 1)
                        out.push_back({ViolationCode::ReferenceObject, f.id + "/" + n.id,
                                       "collection of " + e.cls +
                                           " needs exactly one associated single object as reference, found " +
                                           std::to_string(candidates.size())});
                }
            }

            std::vector<const IOSet*> inputs;
            if (n.kind == NodeKind::StartEvent)
                inputs.push_back(&noInput);
            else
                for (const auto& in : f.inputs_of(n.id))
                    inputs.push_back(&in);

            const auto& outputs = f.outputs_of(n.id);
            for (std::size_t i = 0; i < inputs.size(); ++i) {
                for (std::size_t o = 0; o < outputs.size(); ++o) {
                    auto subject = set_subject(f, n, i, o);
                    auto plan = classify_io(*inputs[i], outputs[o]);
                    for (const auto& p : plan.problems)
                        out.push_back({ViolationCode::InvalidCollectionWrite, subject, p});

                    for (const auto& access : plan.accesses) {
                        const auto* cls = model.find_class(access.cls);
                        if (!cls)
                            continue;
                        if (access.changes_state() && !cls->olc.find_transition(access.fromState, access.toState))
                            out.push_back({ViolationCode::InvalidStateChange, subject,
                                           access.cls + " changes from " + access.fromState + " to " + access.toState +
                                               " which is not a transition of its life cycle"});
                        if (access.kind != AccessKind::Create)
                            continue;

                        for (const auto& supporter : model.classes) {
                            if (supporter.name == access.cls)
                                continue;
                            auto lower = model.bounds(supporter.name, access.cls).lower;
                            if (lower == 0)
                                continue;
                            const auto* single = plan.find(supporter.name, false);
                            const auto* set = plan.find(supporter.name, true);
                            if (set)
                                continue;
                            if (!single) {
                                out.push_back({ViolationCode::DependentWithoutSupporter, subject,
                                               "creates " + access.cls + " without reading or creating its supporter " +
                                                   supporter.name});
                                continue;
                            }
                            if (lower > 1)
                                out.push_back({ViolationCode::SetReadRequired, subject,
                                               "creates " + access.cls + " which needs at least " +
                                                   std::to_string(lower) + " " + supporter.name +
                                                   " objects; read them as a collection"});
                        }
                    }
                }
            }
        }
    }
    return out;
}

std::vector<Violation> validate(const CaseModel& model)
{
    auto out = validate_domain_model(model);
    auto fragments = validate_fragments(model);
    auto cases = validate_case_model(model);
    out.insert(out.end(), fragments.begin(), fragments.end());
    out.insert(out.end(), cases.begin(), cases.end());
    return out;
}

} // namespace fcm
