#include "fcm/model.hpp"

#include "fcm/error.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace fcm {

std::string_view to_string(AttributeType type)
{
    switch (type) {
    case AttributeType::String: return "string";
    case AttributeType::Integer: return "integer";
    case AttributeType::Boolean: return "boolean";
    }
    return "string";
}

std::optional<AttributeType> attribute_type_from_string(std::string_view text)
{
    if (text == "string")
        return AttributeType::String;
    if (text == "integer")
        return AttributeType::Integer;
    if (text == "boolean")
        return AttributeType::Boolean;
    return std::nullopt;
}

std::string_view to_string(NodeKind kind)
{
    switch (kind) {
    case NodeKind::Activity: return "activity";
    case NodeKind::Gateway: return "gateway";
    case NodeKind::StartEvent: return "startEvent";
    }
    return "activity";
}

std::optional<NodeKind> node_kind_from_string(std::string_view text)
{
    if (text == "activity")
        return NodeKind::Activity;
    if (text == "gateway")
        return NodeKind::Gateway;
    if (text == "startEvent")
        return NodeKind::StartEvent;
    return std::nullopt;
}

std::string to_string(const ObjectConfiguration& config)
{
    return config.cls + "[" + config.state + "]";
}

bool ObjectLifeCycle::has_state(std::string_view state) const
{
    return std::find(states.begin(), states.end(), state) != states.end();
}

const OlcTransition* ObjectLifeCycle::find_transition(std::string_view from, std::string_view to) const
{
    auto it = std::find_if(transitions.begin(), transitions.end(),
                           [&](const OlcTransition& t) { return t.from == from && t.to == to; });
    return it == transitions.end() ? nullptr : &*it;
}

OlcTransition* ObjectLifeCycle::find_transition(std::string_view from, std::string_view to)
{
    auto it = std::find_if(transitions.begin(), transitions.end(),
                           [&](const OlcTransition& t) { return t.from == from && t.to == to; });
    return it == transitions.end() ? nullptr : &*it;
}

std::vector<std::string> ObjectLifeCycle::reachable_from(std::string_view state) const
{
    std::set<std::string> seen{std::string(state)};
    std::deque<std::string> queue{std::string(state)};
    while (!queue.empty()) {
        auto current = std::move(queue.front());
        queue.pop_front();
        for (const auto& t : transitions) {
            if (t.from == current && seen.insert(t.to).second)
                queue.push_back(t.to);
        }
    }
    return {seen.begin(), seen.end()};
}

const IOEntry* IOSet::find(std::string_view cls) const
{
    auto it = std::find_if(entries.begin(), entries.end(), [&](const IOEntry& e) { return e.cls == cls; });
    return it == entries.end() ? nullptr : &*it;
}

const Node* Fragment::find_node(std::string_view nodeId) const
{
    auto it = std::find_if(nodes.begin(), nodes.end(), [&](const Node& n) { return n.id == nodeId; });
    return it == nodes.end() ? nullptr : &*it;
}

std::vector<std::string> Fragment::predecessors(std::string_view node) const
{
    std::vector<std::string> result;
    for (const auto& [src, tgt] : flows)
        if (tgt == node)
            result.push_back(src);
    return result;
}

std::vector<std::string> Fragment::successors(std::string_view node) const
{
    std::vector<std::string> result;
    for (const auto& [src, tgt] : flows)
        if (src == node)
            result.push_back(tgt);
    return result;
}

namespace {
const std::vector<IOSet>& lookup_sets(const std::map<std::string, std::vector<IOSet>>& sets, std::string_view node)
{
    static const std::vector<IOSet> none;
    auto it = sets.find(std::string(node));
    return it == sets.end() ? none : it->second;
}
} // namespace

const std::vector<IOSet>& Fragment::inputs_of(std::string_view node) const
{
    return lookup_sets(inputSets, node);
}

const std::vector<IOSet>& Fragment::outputs_of(std::string_view node) const
{
    return lookup_sets(outputSets, node);
}

const ClassDecl* CaseModel::find_class(std::string_view name) const
{
    auto it = std::find_if(classes.begin(), classes.end(), [&](const ClassDecl& c) { return c.name == name; });
    return it == classes.end() ? nullptr : &*it;
}

ClassDecl* CaseModel::find_class(std::string_view name)
{
    auto it = std::find_if(classes.begin(), classes.end(), [&](const ClassDecl& c) { return c.name == name; });
    return it == classes.end() ? nullptr : &*it;
}

const ClassDecl& CaseModel::class_named(std::string_view name) const
{
    if (const auto* c = find_class(name))
        return *c;
    throw UnknownClass(std::string(name));
}

const ClassDecl* CaseModel::case_class() const
{
    auto it = std::find_if(classes.begin(), classes.end(), [](const ClassDecl& c) { return c.isCaseClass; });
    return it == classes.end() ? nullptr : &*it;
}

Bounds CaseModel::bounds(std::string_view source, std::string_view target) const
{
    for (const auto& a : associations) {
        if (a.classA == source && a.classB == target)
            return a.aPerB;
        if (a.classB == source && a.classA == target)
            return a.bPerA;
    }
    return {};
}

bool CaseModel::associated(std::string_view a, std::string_view b) const
{
    return bounds(a, b).upper > 0;
}

std::vector<CardinalityConstraint> CaseModel::constraints() const
{
    std::vector<CardinalityConstraint> result;
    result.reserve(associations.size() * 2);
    for (const auto& a : associations) {
        result.push_back({a.classA, a.classB, a.aPerB});
        result.push_back({a.classB, a.classA, a.bPerA});
    }
    return result;
}

const DataAccess* AccessPlan::find(std::string_view cls, bool set) const
{
    auto it = std::find_if(accesses.begin(), accesses.end(),
                           [&](const DataAccess& a) { return a.cls == cls && a.is_set() == set; });
    return it == accesses.end() ? nullptr : &*it;
}

std::vector<const DataAccess*> AccessPlan::created() const
{
    std::vector<const DataAccess*> result;
    for (const auto& a : accesses)
        if (a.kind == AccessKind::Create)
            result.push_back(&a);
    return result;
}

AccessPlan classify_io(const IOSet& input, const IOSet& output)
{
    AccessPlan plan;
    for (const auto& in : input.entries) {
        const IOEntry* out = output.find(in.cls);
        if (!in.collection) {
            if (out && out->collection) {
                plan.problems.push_back("class " + in.cls + " is read as a single object but written as a collection");
                continue;
            }
            if (!out || out->state == in.state)
                plan.accesses.push_back({in.cls, AccessKind::Read, in.state, in.state});
            else
                plan.accesses.push_back({in.cls, AccessKind::Update, in.state, out->state});
            continue;
        }
        if (out && out->collection && out->state != in.state)
            plan.accesses.push_back({in.cls, AccessKind::UpdateSet, in.state, out->state});
        else
            plan.accesses.push_back({in.cls, AccessKind::ReadSet, in.state, in.state});
    }
    for (const auto& out : output.entries) {
        const IOEntry* in = input.find(out.cls);
        if (out.collection) {
            if (!in || !in->collection)
                plan.problems.push_back("collection of " + out.cls + " is written but not read as a collection");
            continue;
        }
        if (!in || in->collection)
            plan.accesses.push_back({out.cls, AccessKind::Create, {}, out.state});
    }
    return plan;
}

std::vector<const IOEntry*> reference_candidates(const CaseModel& model, const IOSet& input,
                                                 std::string_view collectionClass)
{
    std::vector<const IOEntry*> result;
    for (const auto& e : input.entries)
        if (!e.collection && e.cls != collectionClass && model.associated(collectionClass, e.cls))
            result.push_back(&e);
    return result;
}

} // namespace fcm
