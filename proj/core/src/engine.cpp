#include "fcm/engine.hpp"

#include "fcm/error.hpp"
#include "fcm/hash.hpp"
#include "fcm/model_io.hpp"
#include "fcm/net_io.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>

namespace fcm {

using nlohmann::json;
using namespace cpn;

namespace {

std::atomic<std::uint64_t> nextCaseNumber{1};

std::string now_utc()
{
    auto now = std::chrono::system_clock::now();
    auto seconds = std::chrono::system_clock::to_time_t(now);
    auto millis = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
    std::tm tm{};
    gmtime_r(&seconds, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    char out[40];
    std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(millis));
    return out;
}

std::vector<Id> ids_of(const ColorValue& value)
{
    if (const auto* id = std::get_if<Id>(&value))
        return {*id};
    if (const auto* set = std::get_if<IdSet>(&value))
        return set->items;
    return {};
}

bool type_matches(AttributeType type, const json& value)
{
    switch (type) {
    case AttributeType::String: return value.is_string();
    case AttributeType::Integer: return value.is_number_integer();
    case AttributeType::Boolean: return value.is_boolean();
    }
    return false;
}

std::optional<PlaceIndex> input_place(const Transition& t, VarIndex var)
{
    for (const auto& arc : t.arcs) {
        if (const auto* s = std::get_if<SingleToken>(&arc); s && s->var == var)
            return s->place;
        if (const auto* c = std::get_if<CollectionBind>(&arc); c && c->set == var)
            return c->place;
    }
    return std::nullopt;
}

} // namespace

std::string_view to_string(CaseStatus status)
{
    switch (status) {
    case CaseStatus::Initial: return "initial";
    case CaseStatus::Running: return "running";
    case CaseStatus::Terminated: return "terminated";
    }
    return "initial";
}

CaseStatus status_of(const Net& net, const Marking& marking)
{
    if (!marking.tokens[net.closed].empty())
        return CaseStatus::Terminated;
    if (!marking.tokens[net.running].empty())
        return CaseStatus::Running;
    return CaseStatus::Initial;
}

json to_json(const StepOption& option)
{
    json summary = json::object();
    for (const auto& [var, value] : option.summary)
        summary[var] = value;
    json forms = json::array();
    for (const auto& f : option.requiredForms) {
        json attrs = json::array();
        for (const auto& a : f.attributes)
            attrs.push_back({{"name", a.name}, {"type", to_string(a.type)}, {"required", f.created && a.required}});
        forms.push_back({{"key", f.key}, {"class", f.cls}, {"created", f.created}, {"attributes", attrs}});
    }
    return {{"optionId", option.optionId},
            {"transitionId", option.transitionId},
            {"label", option.label},
            {"binding", summary},
            {"requiredForms", forms}};
}

Engine::Engine(CaseModel model) : _model(std::move(model)), _compiled(compile(_model)), _hash(fcm::model_hash(_model))
{
    const auto& net = _compiled.net;
    for (const auto& t : net.transitions) {
        TransitionInfo info;
        for (const auto& out : t.outputs) {
            if (const auto* f = std::get_if<FreshId>(&out))
                info.created.emplace_back(f->cls, f->counter);
            if (const auto* e = std::get_if<EmitToken>(&out); e && e->var) {
                auto from = input_place(t, *e->var);
                if (from && net.places[*from].role == PlaceRole::Config && *from != e->place)
                    info.updated.push_back(*e->var);
            }
        }
        _info.push_back(std::move(info));
    }
}

CaseState Engine::create_case() const
{
    CaseState state;
    state.caseId = "case-" + std::to_string(nextCaseNumber.fetch_add(1));
    state.modelHash = _hash;
    state.marking = initial_marking(net());
    state.status = CaseStatus::Initial;
    return state;
}

std::string Engine::option_id(TransitionIndex transition, const Binding& binding) const
{
    const auto& t = net().transitions.at(transition);
    return to_hex(fnv1a(t.id + "\n" + binding_to_json(net(), t, binding).dump()));
}

StepOption Engine::make_option(TransitionIndex transition, Binding binding) const
{
    const auto& n = net();
    const auto& t = n.transitions[transition];
    StepOption option;
    option.optionId = option_id(transition, binding);
    option.transitionId = t.id;
    option.label = t.label;
    option.transition = transition;
    std::vector<bool> bookkeeping(binding.size(), false);
    for (const auto& a : t.arcs)
        if (const auto* s = std::get_if<SetTake>(&a))
            bookkeeping[s->var] = true;
    for (std::size_t v = 0; v < binding.size(); ++v)
        if (!bookkeeping[v] && (std::holds_alternative<Id>(binding[v]) || std::holds_alternative<IdSet>(binding[v])))
            option.summary.emplace_back(t.vars[v].name, n.format(binding[v]));
    for (const auto& [cls, _] : _info[transition].created) {
        const auto& name = n.classes[cls];
        option.requiredForms.push_back({name, name, true, _model.class_named(name).attributes});
    }
    for (auto v : _info[transition].updated)
        for (auto id : ids_of(binding[v])) {
            const auto& name = n.classes[id.cls];
            option.requiredForms.push_back({n.format(id), name, false, _model.class_named(name).attributes});
        }
    option.binding = std::move(binding);
    return option;
}

std::vector<StepOption> Engine::enabled_steps(const CaseState& state) const
{
    if (state.status == CaseStatus::Terminated)
        throw CaseTerminated(state.caseId);
    std::vector<StepOption> options;
    for (auto& eb : enabled_bindings(net(), state.marking))
        options.push_back(make_option(eb.transition, std::move(eb.binding)));
    return options;
}

void Engine::check_attributes(const StepOption& option, const json& attributes) const
{
    if (attributes.is_null())
        return check_attributes(option, json::object());
    if (!attributes.is_object())
        throw SchemaError("attributes must be an object keyed by class name or object id");
    for (const auto& [key, values] : attributes.items()) {
        auto form = std::find_if(option.requiredForms.begin(), option.requiredForms.end(),
                                 [&](const FormSpec& f) { return f.key == key; });
        if (form == option.requiredForms.end())
            throw SchemaError("step '" + option.transitionId + "' neither creates nor updates '" + key + "'");
        if (!values.is_object())
            throw SchemaError("attributes for '" + key + "' must be an object");
        for (const auto& [name, value] : values.items()) {
            auto spec = std::find_if(form->attributes.begin(), form->attributes.end(),
                                     [&](const AttributeSpec& a) { return a.name == name; });
            if (spec == form->attributes.end())
                throw SchemaError("class " + form->cls + " has no attribute '" + name + "'");
            if (!type_matches(spec->type, value))
                throw SchemaError("attribute " + form->cls + "." + name + " expects a " +
                                  std::string(to_string(spec->type)) + " value");
        }
    }
    for (const auto& form : option.requiredForms) {
        if (!form.created)
            continue;
        for (const auto& a : form.attributes) {
            if (!a.required)
                continue;
            bool given = attributes.contains(form.key) && attributes.at(form.key).contains(a.name);
            if (!given)
                throw SchemaError("new " + form.cls + " needs a value for '" + a.name + "'");
        }
    }
}

void Engine::refresh_objects(CaseState& state) const
{
    const auto& n = net();
    for (auto& [id, record] : state.objects)
        record.currentState = "consumed";
    for (PlaceIndex p = 0; p < n.places.size(); ++p) {
        if (n.places[p].role != PlaceRole::Config)
            continue;
        for (const auto& token : state.marking.tokens[p]) {
            auto id = std::get<Id>(token);
            auto& record = state.objects[id];
            record.id = id;
            record.currentState = n.places[p].state;
        }
    }
    state.status = status_of(n, state.marking);
}

CaseState Engine::fire_step(const CaseState& state, TransitionIndex transition, const Binding& binding,
                            const json& attributes, std::string timestamp) const
{
    const auto& n = net();
    const auto& t = n.transitions[transition];
    auto option = make_option(transition, binding);
    check_attributes(option, attributes);

    CaseState next = state;
    next.marking = fire(n, state.marking, transition, binding);

    const json attrs = attributes.is_null() ? json::object() : attributes;
    for (const auto& [cls, counter] : _info[transition].created) {
        Id id{cls, static_cast<std::uint32_t>(std::get<std::uint64_t>(binding[counter]))};
        auto& record = next.objects[id];
        record.id = id;
        if (auto it = attrs.find(n.classes[cls]); it != attrs.end())
            for (const auto& [name, value] : it->items())
                record.attributes[name] = value;
    }
    for (auto v : _info[transition].updated)
        for (auto id : ids_of(binding[v]))
            if (auto it = attrs.find(n.format(id)); it != attrs.end())
                for (const auto& [name, value] : it->items())
                    next.objects[id].attributes[name] = value;

    refresh_objects(next);
    next.stepLog.push_back({t.id, binding_to_json(n, t, binding), attrs, std::move(timestamp)});
    return next;
}

CaseState Engine::apply_step(const CaseState& state, const std::string& optionId, const json& attributes) const
{
    for (auto& option : enabled_steps(state))
        if (option.optionId == optionId)
            return fire_step(state, option.transition, option.binding, attributes, now_utc());
    throw StaleOption(optionId);
}

CaseState Engine::apply_step(const CaseState& state, const StepOption& option, const json& attributes) const
{
    if (state.status == CaseStatus::Terminated)
        throw CaseTerminated(state.caseId);
    if (option.transition >= net().transitions.size() || option_id(option.transition, option.binding) != option.optionId ||
        !is_enabled(net(), state.marking, option.transition, option.binding))
        throw StaleOption(option.optionId);
    return fire_step(state, option.transition, option.binding, attributes, now_utc());
}

std::vector<int> Engine::terminable(const CaseState& state) const
{
    std::vector<int> result;
    const auto& n = net();
    for (TransitionIndex t = 0; t < n.transitions.size(); ++t)
        if (n.transitions[t].origin.kind == OriginKind::Termination && !enabled_bindings(n, state.marking, t).empty())
            result.push_back(n.transitions[t].origin.termination);
    std::sort(result.begin(), result.end());
    return result;
}

json Engine::snapshot(const CaseState& state) const
{
    const auto& n = net();
    json objects = json::array();
    for (const auto& [id, record] : state.objects)
        objects.push_back({{"id", value_to_json(n, id)}, {"state", record.currentState}, {"attributes", record.attributes}});
    json log = json::array();
    for (const auto& s : state.stepLog)
        log.push_back(
            {{"transitionId", s.transitionId}, {"binding", s.binding}, {"attributes", s.attributes}, {"timestamp", s.timestamp}});
    return {{"version", 1},
            {"modelHash", state.modelHash},
            {"caseId", state.caseId},
            {"status", to_string(state.status)},
            {"marking", marking_to_json(n, state.marking)},
            {"objects", objects},
            {"stepLog", log}};
}

CaseState Engine::restore(const json& doc) const
{
    if (!doc.is_object())
        throw ParseError("expected a snapshot object", "");
    try {
        if (doc.at("version").get<int>() != 1)
            throw ParseError("unsupported snapshot version", "/version");
        auto hash = doc.at("modelHash").get<std::string>();
        if (hash != _hash)
            throw VersionMismatch(_hash, hash);

        const auto& n = net();
        CaseState state;
        state.caseId = doc.at("caseId").get<std::string>();
        state.modelHash = hash;
        state.marking = marking_from_json(n, doc.at("marking"));
        for (const auto& o : doc.at("objects")) {
            ObjectRecord record;
            record.id = id_from_json(n, o.at("id"));
            record.currentState = o.at("state").get<std::string>();
            for (const auto& [name, value] : o.at("attributes").items())
                record.attributes[name] = value;
            state.objects[record.id] = std::move(record);
        }
        for (const auto& s : doc.at("stepLog"))
            state.stepLog.push_back({s.at("transitionId").get<std::string>(), s.at("binding"), s.at("attributes"),
                                     s.at("timestamp").get<std::string>()});
        state.status = status_of(n, state.marking);
        if (to_string(state.status) != doc.at("status").get<std::string>())
            throw ParseError("status does not match the marking", "/status");
        return state;
    } catch (const json::exception& e) {
        throw ParseError(e.what(), "");
    }
}

CaseState Engine::replay(const std::string& caseId, const std::vector<StepRecord>& log) const
{
    const auto& n = net();
    CaseState state = create_case();
    state.caseId = caseId;
    for (const auto& step : log) {
        auto t = n.transition_index(step.transitionId);
        if (!t)
            throw StaleOption(step.transitionId);
        auto binding = binding_from_json(n, n.transitions[*t], step.binding);
        if (state.status == CaseStatus::Terminated)
            throw CaseTerminated(caseId);
        if (!is_enabled(n, state.marking, *t, binding))
            throw StaleOption(option_id(*t, binding));
        state = fire_step(state, *t, binding, step.attributes, step.timestamp);
    }
    return state;
}

json Engine::describe(const CaseState& state) const
{
    const auto& n = net();
    json objects = json::array();
    for (const auto& [id, record] : state.objects)
        objects.push_back({{"id", n.format(id)},
                           {"class", n.classes[id.cls]},
                           {"state", record.currentState},
                           {"attributes", record.attributes}});
    json associations = json::array();
    const auto& assocTokens = state.marking.tokens[n.associations];
    if (!assocTokens.empty())
        for (const auto& p : std::get<AssocSet>(assocTokens.front()).pairs)
            associations.push_back({n.format(p.first), n.format(p.second)});
    return {{"caseId", state.caseId},
            {"modelHash", state.modelHash},
            {"status", to_string(state.status)},
            {"objects", objects},
            {"associations", associations},
            {"steps", state.stepLog.size()}};
}

} // namespace fcm
