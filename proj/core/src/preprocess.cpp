#include "fcm/preprocess.hpp"

#include <algorithm>

namespace fcm {

std::set<std::string> supporting_states(const CaseModel& model, std::string_view supporter,
                                        std::string_view dependent)
{
    model.class_named(supporter);
    model.class_named(dependent);

    std::set<std::string> result;
    if (!model.associated(dependent, supporter))
        return result;

    const IOSet noInput;
    for (const auto& f : model.fragments) {
        for (const auto& n : f.nodes) {
            if (n.kind == NodeKind::Gateway)
                continue;
            std::vector<const IOSet*> inputs;
            if (n.kind == NodeKind::StartEvent)
                inputs.push_back(&noInput);
            else
                for (const auto& in : f.inputs_of(n.id))
                    inputs.push_back(&in);

            for (const auto* in : inputs) {
                for (const auto& out : f.outputs_of(n.id)) {
                    auto plan = classify_io(*in, out);
                    auto created = plan.created();
                    bool createsDependent = std::any_of(created.begin(), created.end(),
                                                        [&](const DataAccess* a) { return a->cls == dependent; });
                    if (!createsDependent)
                        continue;
                    for (const auto& access : plan.accesses) {
                        if (access.cls != supporter)
                            continue;
                        if (access.kind == AccessKind::Create)
                            result.insert(access.toState);
                        else
                            result.insert(access.fromState);
                    }
                }
            }
        }
    }
    return result;
}

CaseModel augment_goal_guards(CaseModel model)
{
    // Guards are computed from the unmodified model so that adding them never
    // changes the outcome for later pairs.
    const CaseModel original = model;

    for (const auto& supporter : original.classes) {
        for (const auto& dependent : original.classes) {
            if (supporter.name == dependent.name)
                continue;
            auto goal = original.bounds(dependent.name, supporter.name).goalLower;
            if (goal == 0)
                continue;
            auto states = supporting_states(original, supporter.name, dependent.name);
            if (states.empty())
                continue;

            auto* target = model.find_class(supporter.name);
            for (auto& t : target->olc.transitions) {
                if (!states.count(t.from))
                    continue;
                auto reachable = original.class_named(supporter.name).olc.reachable_from(t.to);
                bool readds = std::any_of(reachable.begin(), reachable.end(),
                                          [&](const std::string& q) { return states.count(q) > 0; });
                if (readds)
                    continue;
                GoalGuard guard{dependent.name, goal};
                bool present = std::any_of(t.guards.begin(), t.guards.end(), [&](const GoalGuard& g) {
                    return g.dependentClass == guard.dependentClass;
                });
                if (!present)
                    t.guards.push_back(guard);
            }
        }
    }
    return model;
}

} // namespace fcm
