#include "fcm/compiler.hpp"

#include "fcm/error.hpp"
#include "fcm/preprocess.hpp"
#include "fcm/validate.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace fcm {

using namespace cpn;

namespace {

ClassIndex class_of(const Net& net, const std::string& name)
{
    auto idx = net.class_index(name);
    if (!idx)
        throw UnknownClass(name);
    return *idx;
}

PlaceIndex config_of(const Net& net, const std::string& cls, const std::string& state)
{
    auto p = net.place_index(cls + "[" + state + "]");
    if (!p)
        throw CompileError(CompileError::Kind::InvalidModel, "no place for configuration " + cls + "[" + state + "]");
    return *p;
}

PlaceIndex flow_place(const Net& net, const Fragment& f, const Flow& flow)
{
    auto p = net.place_index(control_flow_place_id(f.id, flow));
    if (!p)
        throw CompileError(CompileError::Kind::InvalidModel, "no place for flow " + flow.first + "->" + flow.second);
    return *p;
}

std::string lowercase(std::string text)
{
    for (auto& ch : text)
        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return text;
}

const Bounds& bounds(const Net& net, ClassIndex source, ClassIndex target)
{
    return net.cardinality[source][target];
}

bool associated(const Net& net, ClassIndex a, ClassIndex b)
{
    return a != b && bounds(net, a, b).upper > 0;
}

class TransitionBuilder
{
public:
    explicit TransitionBuilder(Transition& t) : _t(t) {}

    VarIndex var(std::string name, ColorSet colorset, bool fresh = false)
    {
        while (_t.var_named(name))
            name += "_";
        _t.vars.push_back({std::move(name), colorset, fresh});
        return static_cast<VarIndex>(_t.vars.size() - 1);
    }

private:
    Transition& _t;
};

std::string set_label(const Fragment& f, const Node& n, std::size_t in, std::size_t out)
{
    std::string label = n.label;
    std::size_t inputs = n.kind == NodeKind::StartEvent ? 1 : f.inputs_of(n.id).size();
    std::size_t outputs = f.outputs_of(n.id).size();
    if (inputs > 1 || outputs > 1) {
        label += " (";
        if (inputs > 1)
            label += "input " + std::to_string(in + 1) + "/" + std::to_string(inputs);
        if (inputs > 1 && outputs > 1)
            label += ", ";
        if (outputs > 1)
            label += "output " + std::to_string(out + 1) + "/" + std::to_string(outputs);
        label += ")";
    }
    return label;
}

std::optional<Flow> incoming_flow(const Fragment& f, const std::string& node)
{
    for (const auto& flow : f.flows)
        if (flow.second == node)
            return flow;
    return std::nullopt;
}

std::optional<Flow> outgoing_flow(const Fragment& f, const std::string& node)
{
    for (const auto& flow : f.flows)
        if (flow.first == node)
            return flow;
    return std::nullopt;
}

/// A bound object or object set a created object can be associated with.
struct Partner
{
    ClassIndex cls;
    VarIndex var;
    bool set = false;
    bool fresh = false;
};

} // namespace

std::string control_flow_place_id(const std::string& fragment, const Flow& flow)
{
    return "cf/" + fragment + "/" + flow.first + "->" + flow.second;
}

Net build_places(const CaseModel& model)
{
    Net net;
    for (const auto& c : model.classes)
        net.classes.push_back(c.name);
    std::sort(net.classes.begin(), net.classes.end());

    net.cardinality.assign(net.classes.size(), std::vector<Bounds>(net.classes.size()));
    for (std::size_t s = 0; s < net.classes.size(); ++s)
        for (std::size_t t = 0; t < net.classes.size(); ++t)
            if (s != t)
                net.cardinality[s][t] = model.bounds(net.classes[s], net.classes[t]);

    net.places.push_back({"i", ColorSet::Unit, PlaceRole::Initial, {}, {}, {}, {}});
    net.places.push_back({"r", ColorSet::Unit, PlaceRole::Running, {}, {}, {}, {}});
    net.places.push_back({"o", ColorSet::Unit, PlaceRole::Final, {}, {}, {}, {}});
    net.places.push_back({"objects", ColorSet::IdSet, PlaceRole::Objects, {}, {}, {}, {}});
    net.places.push_back({"associations", ColorSet::AssocSet, PlaceRole::Associations, {}, {}, {}, {}});
    for (ClassIndex c = 0; c < net.classes.size(); ++c)
        net.places.push_back({"cnt_" + net.classes[c], ColorSet::Int, PlaceRole::Counter, c, {}, {}, {}});
    for (ClassIndex c = 0; c < net.classes.size(); ++c)
        for (const auto& q : model.class_named(net.classes[c]).olc.states)
            net.places.push_back({net.classes[c] + "[" + q + "]", ColorSet::Id, PlaceRole::Config, c, q, {}, {}});
    for (const auto& f : model.fragments)
        for (const auto& flow : f.flows)
            net.places.push_back(
                {control_flow_place_id(f.id, flow), ColorSet::CFMap, PlaceRole::ControlFlow, {}, {}, f.id, flow});

    net.index();
    return net;
}

Transition translate_gateway(const Net& net, const Fragment& fragment, const Flow& in, const Flow& out)
{
    Transition t;
    t.id = fragment.id + "/" + in.second + "/" + in.first + "/" + out.second;
    t.label = in.second + " (" + in.first + " to " + out.second + ")";
    t.origin = {OriginKind::Gateway, fragment.id, in.second, -1, -1, in.first, out.second, -1};
    TransitionBuilder b(t);
    auto r = b.var("r", ColorSet::Unit);
    auto cf = b.var("cf", ColorSet::CFMap);
    t.arcs.push_back(TestToken{net.running, r});
    t.arcs.push_back(SingleToken{flow_place(net, fragment, in), cf});
    t.outputs.push_back(EmitToken{flow_place(net, fragment, out), cf});
    return t;
}

Transition translate_start_event(const CaseModel&, const Net& net, const Fragment& fragment, const Node& event,
                                 std::size_t outputSet)
{
    const auto& out = fragment.outputs_of(event.id).at(outputSet);

    Transition t;
    t.id = fragment.id + "/" + event.id + "/out" + std::to_string(outputSet);
    t.label = set_label(fragment, event, 0, outputSet);
    t.origin = {OriginKind::StartEvent, fragment.id, event.id, -1, static_cast<int>(outputSet), {}, {}, -1};
    TransitionBuilder b(t);

    std::vector<ClassIndex> created;
    for (const auto& e : out.entries) {
        if (e.collection)
            throw CompileError(CompileError::Kind::InvalidModel, t.id + ": start events cannot create collections");
        created.push_back(class_of(net, e.cls));
    }

    auto i = b.var("i", ColorSet::Unit);
    t.arcs.push_back(SingleToken{net.initial, i});
    auto objects = b.var("objects", ColorSet::IdSet);
    auto assocs = b.var("assocs", ColorSet::AssocSet);
    t.arcs.push_back(SetTake{net.objects, objects});
    t.arcs.push_back(SetTake{net.associations, assocs});
    std::vector<VarIndex> counters;
    for (auto c : created) {
        counters.push_back(b.var("cnt_" + lowercase(net.classes[c]), ColorSet::Int));
        t.arcs.push_back(CounterTake{net.counters[c], counters.back()});
    }
    std::vector<VarIndex> fresh;
    for (auto c : created)
        fresh.push_back(b.var("new_" + lowercase(net.classes[c]), ColorSet::Id, true));

    for (std::size_t k = 0; k < created.size(); ++k) {
        auto d = created[k];
        for (ClassIndex c = 0; c < net.classes.size(); ++c) {
            auto lower = bounds(net, c, d).lower;
            if (c == d || lower == 0)
                continue;
            if (std::find(created.begin(), created.end(), c) == created.end())
                throw CompileError(CompileError::Kind::MissingSupporterBinding,
                                   t.id + ": creates " + net.classes[d] + " without its supporter " + net.classes[c]);
            if (lower > 1)
                throw CompileError(CompileError::Kind::InvalidModel,
                                   t.id + ": " + net.classes[d] + " needs " + std::to_string(lower) + " " +
                                       net.classes[c] + " objects");
        }
    }

    t.outputs.push_back(EmitToken{net.running, std::nullopt});
    for (std::size_t k = 0; k < created.size(); ++k) {
        FreshId f{created[k], counters[k], fresh[k], config_of(net, out.entries[k].cls, out.entries[k].state), {}};
        for (std::size_t j = 0; j < k; ++j)
            if (associated(net, created[j], created[k]))
                f.associateWith.push_back(fresh[j]);
        t.outputs.push_back(f);
    }
    for (std::size_t k = 0; k < created.size(); ++k)
        t.outputs.push_back(CounterPut{net.counters[created[k]], counters[k]});
    t.outputs.push_back(SetPut{net.objects, objects});
    t.outputs.push_back(SetPut{net.associations, assocs});
    if (auto flow = outgoing_flow(fragment, event.id)) {
        EmitCF cf{flow_place(net, fragment, *flow), std::nullopt, {}};
        for (std::size_t k = 0; k < created.size(); ++k)
            cf.updates.emplace_back(created[k], fresh[k]);
        std::sort(cf.updates.begin(), cf.updates.end());
        t.outputs.push_back(cf);
    }
    return t;
}

Transition translate_activity(const CaseModel& model, const Net& net, const Fragment& fragment, const Node& activity,
                              std::size_t inputSet, std::size_t outputSet)
{
    const auto& in = fragment.inputs_of(activity.id).at(inputSet);
    const auto& out = fragment.outputs_of(activity.id).at(outputSet);
    auto plan = classify_io(in, out);

    Transition t;
    t.id = fragment.id + "/" + activity.id + "/in" + std::to_string(inputSet) + "/out" + std::to_string(outputSet);
    t.label = set_label(fragment, activity, inputSet, outputSet);
    t.origin = {OriginKind::Activity,         fragment.id, activity.id, static_cast<int>(inputSet),
                static_cast<int>(outputSet), {},          {},          -1};
    if (!plan.problems.empty())
        throw CompileError(CompileError::Kind::InvalidModel, t.id + ": " + plan.problems.front());

    std::vector<const DataAccess*> singles, sets, created;
    for (const auto& a : plan.accesses) {
        if (a.kind == AccessKind::Create)
            created.push_back(&a);
        else if (a.is_set())
            sets.push_back(&a);
        else
            singles.push_back(&a);
    }

    auto guards_of = [&](const DataAccess& a) -> std::vector<GoalGuard> {
        if (!a.changes_state())
            return {};
        const auto* tr = model.class_named(a.cls).olc.find_transition(a.fromState, a.toState);
        if (!tr)
            throw CompileError(CompileError::Kind::InvalidModel,
                               t.id + ": " + a.cls + " cannot change from " + a.fromState + " to " + a.toState);
        return tr->guards;
    };
    bool hasGoalGuards = false;
    for (const auto& a : plan.accesses)
        hasGoalGuards = hasGoalGuards || !guards_of(a).empty();

    bool anyAssociatedPair = false;
    for (std::size_t x = 0; x < singles.size(); ++x)
        for (std::size_t y = x + 1; y < singles.size(); ++y)
            anyAssociatedPair = anyAssociatedPair ||
                                associated(net, class_of(net, singles[x]->cls), class_of(net, singles[y]->cls));
    bool creates = !created.empty();
    bool needAssocs = creates || !sets.empty() || hasGoalGuards || anyAssociatedPair;

    TransitionBuilder b(t);
    auto r = b.var("r", ColorSet::Unit);
    t.arcs.push_back(TestToken{net.running, r});

    auto inFlow = incoming_flow(fragment, activity.id);
    std::optional<VarIndex> cf;
    if (inFlow) {
        cf = b.var("cf", ColorSet::CFMap);
        t.arcs.push_back(SingleToken{flow_place(net, fragment, *inFlow), *cf});
    }

    std::optional<VarIndex> objects, assocs;
    if (creates) {
        objects = b.var("objects", ColorSet::IdSet);
        assocs = b.var("assocs", ColorSet::AssocSet);
        t.arcs.push_back(SetTake{net.objects, *objects});
        t.arcs.push_back(SetTake{net.associations, *assocs});
    } else if (needAssocs) {
        assocs = b.var("assocs", ColorSet::AssocSet);
        t.arcs.push_back(TestToken{net.associations, *assocs});
    }

    std::vector<VarIndex> counters;
    for (const auto* a : created) {
        auto c = class_of(net, a->cls);
        counters.push_back(b.var("cnt_" + lowercase(a->cls), ColorSet::Int));
        t.arcs.push_back(CounterTake{net.counters[c], counters.back()});
    }

    std::vector<VarIndex> singleVars;
    for (const auto* a : singles) {
        singleVars.push_back(b.var(lowercase(a->cls), ColorSet::Id));
        t.arcs.push_back(SingleToken{config_of(net, a->cls, a->fromState), singleVars.back()});
    }

    std::vector<VarIndex> setVars;
    for (const auto* a : sets) {
        auto candidates = reference_candidates(model, in, a->cls);
        if (candidates.size() != 1)
            throw CompileError(CompileError::Kind::InvalidModel,
                               t.id + ": collection of " + a->cls + " has no unique reference object");
        auto refIt = std::find_if(singles.begin(), singles.end(),
                                  [&](const DataAccess* s) { return s->cls == candidates.front()->cls; });
        auto ref = singleVars[static_cast<std::size_t>(refIt - singles.begin())];
        setVars.push_back(b.var(lowercase(a->cls) + "_set", ColorSet::IdSet));
        t.arcs.push_back(
            CollectionBind{config_of(net, a->cls, a->fromState), setVars.back(), ref, class_of(net, a->cls), *assocs});
    }

    std::vector<VarIndex> freshVars;
    for (const auto* a : created)
        freshVars.push_back(b.var("new_" + lowercase(a->cls), ColorSet::Id, true));

    // Guard.
    for (std::size_t x = 0; x < singles.size(); ++x)
        for (std::size_t y = x + 1; y < singles.size(); ++y)
            if (associated(net, class_of(net, singles[x]->cls), class_of(net, singles[y]->cls)))
                t.guard.push_back(Associated{singleVars[x], singleVars[y], *assocs});
    if (cf)
        for (std::size_t x = 0; x < singles.size(); ++x)
            t.guard.push_back(CFConsistent{*cf, class_of(net, singles[x]->cls), singleVars[x]});
    for (std::size_t x = 0; x < sets.size(); ++x) {
        const auto& bind = std::get<CollectionBind>(t.arcs[t.arcs.size() - sets.size() + x]);
        t.guard.push_back(AllAssociatedInState{bind.ref, bind.cls, bind.place, setVars[x], *assocs});
    }

    std::vector<ClassIndex> createdClasses;
    for (const auto* a : created)
        createdClasses.push_back(class_of(net, a->cls));

    std::vector<std::vector<Partner>> partners(created.size());
    for (std::size_t k = 0; k < created.size(); ++k) {
        auto d = createdClasses[k];
        for (std::size_t x = 0; x < singles.size(); ++x) {
            auto c = class_of(net, singles[x]->cls);
            if (associated(net, c, d))
                partners[k].push_back({c, singleVars[x], false, false});
        }
        for (std::size_t x = 0; x < sets.size(); ++x) {
            auto c = class_of(net, sets[x]->cls);
            if (associated(net, c, d))
                partners[k].push_back({c, setVars[x], true, false});
        }
        for (std::size_t j = 0; j < created.size(); ++j)
            if (j != k && associated(net, createdClasses[j], d))
                partners[k].push_back({createdClasses[j], freshVars[j], false, true});

        for (const auto& p : partners[k]) {
            if (p.fresh)
                continue;
            t.guard.push_back(NotExceedsUpper{p.var, d, bounds(net, d, p.cls).upper, 1, *assocs});
            if (p.set)
                t.guard.push_back(SetSizeAtMost{p.var, bounds(net, p.cls, d).upper});
        }

        for (ClassIndex c = 0; c < net.classes.size(); ++c) {
            auto lower = bounds(net, c, d).lower;
            if (c == d || lower == 0)
                continue;
            auto it = std::find_if(partners[k].begin(), partners[k].end(), [&](const Partner& p) { return p.cls == c; });
            if (it == partners[k].end())
                throw CompileError(CompileError::Kind::MissingSupporterBinding,
                                   t.id + ": creates " + net.classes[d] + " without a bound " + net.classes[c]);
            if (it->set)
                t.guard.push_back(SetSizeAtLeast{it->var, lower});
            else if (!it->fresh)
                t.guard.push_back(MeetsLower{it->var, lower});
            else if (lower > 1)
                throw CompileError(CompileError::Kind::InvalidModel,
                                   t.id + ": " + net.classes[d] + " needs " + std::to_string(lower) + " " +
                                       net.classes[c] + " objects but only one is created");
        }
    }

    auto createdAndAssociated = [&](ClassIndex dependent, ClassIndex owner) {
        return std::find(createdClasses.begin(), createdClasses.end(), dependent) != createdClasses.end() &&
               associated(net, dependent, owner);
    };
    auto addGoalGuards = [&](const DataAccess& a, VarIndex var) {
        auto owner = class_of(net, a.cls);
        for (const auto& g : guards_of(a)) {
            auto dep = class_of(net, g.dependentClass);
            t.guard.push_back(
                GoalCount{var, std::nullopt, dep, g.minCount, createdAndAssociated(dep, owner) ? 1u : 0u, *assocs});
        }
    };
    for (std::size_t x = 0; x < singles.size(); ++x)
        addGoalGuards(*singles[x], singleVars[x]);
    for (std::size_t x = 0; x < sets.size(); ++x)
        addGoalGuards(*sets[x], setVars[x]);

    // Outputs.
    for (std::size_t x = 0; x < singles.size(); ++x)
        t.outputs.push_back(EmitToken{config_of(net, singles[x]->cls, singles[x]->toState), singleVars[x]});
    for (std::size_t x = 0; x < sets.size(); ++x)
        t.outputs.push_back(EmitToken{config_of(net, sets[x]->cls, sets[x]->toState), setVars[x]});
    for (std::size_t k = 0; k < created.size(); ++k) {
        FreshId f{createdClasses[k], counters[k], freshVars[k], config_of(net, created[k]->cls, created[k]->toState),
                  {}};
        for (const auto& p : partners[k])
            if (!p.fresh || p.var < freshVars[k])
                f.associateWith.push_back(p.var);
        t.outputs.push_back(f);
    }
    for (std::size_t k = 0; k < created.size(); ++k)
        t.outputs.push_back(CounterPut{net.counters[createdClasses[k]], counters[k]});
    if (creates) {
        t.outputs.push_back(SetPut{net.objects, *objects});
        t.outputs.push_back(SetPut{net.associations, *assocs});
    }
    if (auto flow = outgoing_flow(fragment, activity.id)) {
        EmitCF emit{flow_place(net, fragment, *flow), cf, {}};
        for (std::size_t x = 0; x < singles.size(); ++x)
            emit.updates.emplace_back(class_of(net, singles[x]->cls), singleVars[x]);
        for (std::size_t k = 0; k < created.size(); ++k)
            emit.updates.emplace_back(createdClasses[k], freshVars[k]);
        std::sort(emit.updates.begin(), emit.updates.end());
        t.outputs.push_back(emit);
    }
    return t;
}

Transition translate_termination(const CaseModel&, const Net& net, const DataCondition& condition,
                                 std::size_t index)
{
    Transition t;
    t.id = "term/" + std::to_string(index);
    std::string label = "terminate";
    for (std::size_t k = 0; k < condition.configurations.size(); ++k)
        label += (k ? ", " : " when ") + to_string(condition.configurations[k]);
    t.label = label;
    t.origin = {OriginKind::Termination, {}, {}, -1, -1, {}, {}, static_cast<int>(index)};

    TransitionBuilder b(t);
    auto r = b.var("r", ColorSet::Unit);
    t.arcs.push_back(SingleToken{net.running, r});
    for (const auto& c : condition.configurations) {
        auto v = b.var(lowercase(c.cls), ColorSet::Id);
        t.arcs.push_back(SingleToken{config_of(net, c.cls, c.state), v});
    }
    auto objects = b.var("objects", ColorSet::IdSet);
    auto assocs = b.var("assocs", ColorSet::AssocSet);
    t.arcs.push_back(SetTake{net.objects, objects});
    t.arcs.push_back(SetTake{net.associations, assocs});

    for (ClassIndex owner = 0; owner < net.classes.size(); ++owner)
        for (ClassIndex c = 0; c < net.classes.size(); ++c)
            if (c != owner && bounds(net, c, owner).goalLower > 0)
                t.guard.push_back(GoalCount{objects, owner, c, bounds(net, c, owner).goalLower, 0, assocs});

    t.outputs.push_back(EmitToken{net.closed, std::nullopt});
    return t;
}

Compilation compile(const CaseModel& input)
{
    auto violations = validate(input);
    if (!violations.empty()) {
        std::string message = "model has " + std::to_string(violations.size()) + " violation(s)";
        for (const auto& v : violations)
            message += "\n  " + std::string(to_string(v.code)) + " " + v.subject + ": " + v.message;
        throw CompileError(CompileError::Kind::InvalidModel, message);
    }
    const CaseModel model = augment_goal_guards(input);

    Compilation result;
    Net& net = result.net;
    net = build_places(model);

    for (const auto& f : model.fragments) {
        for (const auto& n : f.nodes) {
            switch (n.kind) {
            case NodeKind::Gateway:
                for (const auto& inFlow : f.flows) {
                    if (inFlow.second != n.id)
                        continue;
                    for (const auto& outFlow : f.flows)
                        if (outFlow.first == n.id)
                            net.transitions.push_back(translate_gateway(net, f, inFlow, outFlow));
                }
                break;
            case NodeKind::StartEvent:
                for (std::size_t o = 0; o < f.outputs_of(n.id).size(); ++o)
                    net.transitions.push_back(translate_start_event(model, net, f, n, o));
                break;
            case NodeKind::Activity:
                for (std::size_t i = 0; i < f.inputs_of(n.id).size(); ++i)
                    for (std::size_t o = 0; o < f.outputs_of(n.id).size(); ++o)
                        net.transitions.push_back(translate_activity(model, net, f, n, i, o));
                break;
            }
        }
    }
    for (std::size_t k = 0; k < model.terminationConditions.size(); ++k)
        net.transitions.push_back(translate_termination(model, net, model.terminationConditions[k], k));
    net.index();

    auto& report = result.report;
    report.places = net.places.size();
    report.transitions = net.transitions.size();
    for (const auto& p : net.places)
        ++report.placesByRole[std::string(to_string(p.role))];
    for (const auto& t : net.transitions) {
        ++report.transitionsByOrigin[std::string(to_string(t.origin.kind))];
        ++report.transitionsByFragment[t.origin.kind == OriginKind::Termination ? "termination" : t.origin.fragment];
    }
    return result;
}

nlohmann::json to_json(const CompileReport& report)
{
    return {
        {"places", report.places},
        {"transitions", report.transitions},
        {"placesByRole", report.placesByRole},
        {"transitionsByOrigin", report.transitionsByOrigin},
        {"transitionsByFragment", report.transitionsByFragment},
    };
}

namespace {

std::string quoted(const std::string& text)
{
    std::string out = "\"";
    for (char ch : text) {
        if (ch == '"' || ch == '\\')
            out += '\\';
        out += ch;
    }
    return out + "\"";
}

} // namespace

std::string export_dot(const Net& net)
{
    std::ostringstream out;
    out << "digraph net {\n  rankdir=LR;\n";
    for (const auto& p : net.places) {
        std::string label = p.id;
        if (p.colorset != ColorSet::Unit)
            label += "\\n" + std::string(to_string(p.colorset));
        out << "  " << quoted("p:" + p.id) << " [shape=ellipse,label=" << quoted(label) << "];\n";
    }
    for (const auto& t : net.transitions)
        out << "  " << quoted("t:" + t.id) << " [shape=box,label=" << quoted(t.label) << "];\n";
    for (const auto& t : net.transitions) {
        auto tid = quoted("t:" + t.id);
        for (const auto& arc : t.arcs) {
            std::visit(
                [&](const auto& a) {
                    using A = std::decay_t<decltype(a)>;
                    auto pid = quoted("p:" + net.places[a.place].id);
                    if constexpr (std::is_same_v<A, CollectionBind>) {
                        out << "  " << pid << " -> " << tid << " [label=" << quoted(t.vars[a.set].name) << "];\n";
                    } else if constexpr (std::is_same_v<A, TestToken>) {
                        out << "  " << pid << " -> " << tid << " [dir=both,label=" << quoted(t.vars[a.var].name)
                            << "];\n";
                    } else {
                        out << "  " << pid << " -> " << tid << " [label=" << quoted(t.vars[a.var].name) << "];\n";
                    }
                },
                arc);
        }
        for (const auto& o : t.outputs) {
            std::visit(
                [&](const auto& e) {
                    out << "  " << tid << " -> " << quoted("p:" + net.places[e.place].id) << ";\n";
                },
                o);
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace fcm
