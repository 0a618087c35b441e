#include "fcm/net_io.hpp"

#include "fcm/error.hpp"

#include <algorithm>

namespace fcm {

using nlohmann::json;
using namespace cpn;

namespace {

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct Writer
{
    const Net& net;
    const Transition& t;

    json place(PlaceIndex p) const { return net.places.at(p).id; }
    json var(VarIndex v) const { return t.vars.at(v).name; }
    json cls(ClassIndex c) const { return net.classes.at(c); }

    json arc(const ArcPattern& a) const
    {
        return std::visit(overloaded{
                              [&](const SingleToken& x) -> json {
                                  return {{"kind", "single"}, {"place", place(x.place)}, {"var", var(x.var)}};
                              },
                              [&](const TestToken& x) -> json {
                                  return {{"kind", "test"}, {"place", place(x.place)}, {"var", var(x.var)}};
                              },
                              [&](const CounterTake& x) -> json {
                                  return {{"kind", "counter"}, {"place", place(x.place)}, {"var", var(x.var)}};
                              },
                              [&](const SetTake& x) -> json {
                                  return {{"kind", "set"}, {"place", place(x.place)}, {"var", var(x.var)}};
                              },
                              [&](const CollectionBind& x) -> json {
                                  return {{"kind", "collection"}, {"place", place(x.place)}, {"set", var(x.set)},
                                          {"ref", var(x.ref)},     {"class", cls(x.cls)},    {"assocs", var(x.assocs)}};
                              },
                          },
                          a);
    }

    json atom(const GuardAtom& g) const
    {
        return std::visit(
            overloaded{
                [&](const Associated& x) -> json {
                    return {{"atom", "associated"}, {"a", var(x.a)}, {"b", var(x.b)}, {"assocs", var(x.assocs)}};
                },
                [&](const NotExceedsUpper& x) -> json {
                    return {{"atom", "notExceedsUpper"}, {"subject", var(x.subject)}, {"partner", cls(x.partner)},
                            {"bound", x.bound},          {"added", x.added},          {"assocs", var(x.assocs)}};
                },
                [&](const MeetsLower& x) -> json {
                    return {{"atom", "meetsLower"}, {"subject", var(x.subject)}, {"bound", x.bound}};
                },
                [&](const GoalCount& x) -> json {
                    json j = {{"atom", "goalCount"},  {"subject", var(x.subject)}, {"dependent", cls(x.dependent)},
                              {"minCount", x.minCount}, {"added", x.added},          {"assocs", var(x.assocs)}};
                    if (x.subjectClass)
                        j["subjectClass"] = cls(*x.subjectClass);
                    return j;
                },
                [&](const CFConsistent& x) -> json {
                    return {{"atom", "cfConsistent"}, {"cf", var(x.cf)}, {"class", cls(x.cls)}, {"var", var(x.var)}};
                },
                [&](const AllAssociatedInState& x) -> json {
                    return {{"atom", "allAssociatedInState"},
                            {"ref", var(x.ref)},
                            {"class", cls(x.cls)},
                            {"place", place(x.place)},
                            {"set", var(x.set)},
                            {"assocs", var(x.assocs)}};
                },
                [&](const SetSizeAtLeast& x) -> json {
                    return {{"atom", "setSizeAtLeast"}, {"set", var(x.set)}, {"n", x.n}};
                },
                [&](const SetSizeAtMost& x) -> json {
                    return {{"atom", "setSizeAtMost"}, {"set", var(x.set)}, {"n", x.n}};
                },
            },
            g);
    }

    json output(const OutputEffect& o) const
    {
        return std::visit(overloaded{
                              [&](const EmitToken& x) -> json {
                                  json j = {{"effect", "emit"}, {"place", place(x.place)}};
                                  if (x.var)
                                      j["var"] = var(*x.var);
                                  return j;
                              },
                              [&](const FreshId& x) -> json {
                                  json with = json::array();
                                  for (auto v : x.associateWith)
                                      with.push_back(var(v));
                                  return {{"effect", "freshId"}, {"class", cls(x.cls)}, {"counter", var(x.counter)},
                                          {"out", var(x.out)},   {"place", place(x.place)}, {"associateWith", with}};
                              },
                              [&](const CounterPut& x) -> json {
                                  return {{"effect", "counterPut"}, {"place", place(x.place)}, {"counter", var(x.counter)}};
                              },
                              [&](const SetPut& x) -> json {
                                  return {{"effect", "setPut"}, {"place", place(x.place)}, {"var", var(x.var)}};
                              },
                              [&](const EmitCF& x) -> json {
                                  json updates = json::array();
                                  for (const auto& [c, v] : x.updates)
                                      updates.push_back({{"class", cls(c)}, {"var", var(v)}});
                                  json j = {{"effect", "emitCF"}, {"place", place(x.place)}, {"updates", updates}};
                                  if (x.base)
                                      j["base"] = var(*x.base);
                                  return j;
                              },
                          },
                          o);
    }
};

struct Reader
{
    const Net& net;
    const Transition& t;

    PlaceIndex place(const json& j) const
    {
        auto p = net.place_index(j.get<std::string>());
        if (!p)
            throw ParseError("unknown place '" + j.get<std::string>() + "'", "/transitions/" + t.id);
        return *p;
    }
    VarIndex var(const json& j) const
    {
        auto v = t.var_named(j.get<std::string>());
        if (!v)
            throw ParseError("unknown variable '" + j.get<std::string>() + "'", "/transitions/" + t.id);
        return *v;
    }
    ClassIndex cls(const json& j) const
    {
        auto c = net.class_index(j.get<std::string>());
        if (!c)
            throw UnknownClass(j.get<std::string>());
        return *c;
    }

    ArcPattern arc(const json& j) const
    {
        auto kind = j.at("kind").get<std::string>();
        if (kind == "single")
            return SingleToken{place(j.at("place")), var(j.at("var"))};
        if (kind == "test")
            return TestToken{place(j.at("place")), var(j.at("var"))};
        if (kind == "counter")
            return CounterTake{place(j.at("place")), var(j.at("var"))};
        if (kind == "set")
            return SetTake{place(j.at("place")), var(j.at("var"))};
        if (kind == "collection")
            return CollectionBind{place(j.at("place")), var(j.at("set")), var(j.at("ref")), cls(j.at("class")),
                                  var(j.at("assocs"))};
        throw ParseError("unknown arc kind '" + kind + "'", "/transitions/" + t.id);
    }

    GuardAtom atom(const json& j) const
    {
        auto kind = j.at("atom").get<std::string>();
        if (kind == "associated")
            return Associated{var(j.at("a")), var(j.at("b")), var(j.at("assocs"))};
        if (kind == "notExceedsUpper")
            return NotExceedsUpper{var(j.at("subject")), cls(j.at("partner")), j.at("bound").get<unsigned>(),
                                   j.at("added").get<unsigned>(), var(j.at("assocs"))};
        if (kind == "meetsLower")
            return MeetsLower{var(j.at("subject")), j.at("bound").get<unsigned>()};
        if (kind == "goalCount") {
            std::optional<ClassIndex> subjectClass;
            if (j.contains("subjectClass"))
                subjectClass = cls(j.at("subjectClass"));
            return GoalCount{var(j.at("subject")),        subjectClass, cls(j.at("dependent")),
                             j.at("minCount").get<unsigned>(), j.at("added").get<unsigned>(), var(j.at("assocs"))};
        }
        if (kind == "cfConsistent")
            return CFConsistent{var(j.at("cf")), cls(j.at("class")), var(j.at("var"))};
        if (kind == "allAssociatedInState")
            return AllAssociatedInState{var(j.at("ref")), cls(j.at("class")), place(j.at("place")), var(j.at("set")),
                                        var(j.at("assocs"))};
        if (kind == "setSizeAtLeast")
            return SetSizeAtLeast{var(j.at("set")), j.at("n").get<unsigned>()};
        if (kind == "setSizeAtMost")
            return SetSizeAtMost{var(j.at("set")), j.at("n").get<unsigned>()};
        throw ParseError("unknown guard atom '" + kind + "'", "/transitions/" + t.id);
    }

    OutputEffect output(const json& j) const
    {
        auto kind = j.at("effect").get<std::string>();
        if (kind == "emit") {
            std::optional<VarIndex> v;
            if (j.contains("var"))
                v = var(j.at("var"));
            return EmitToken{place(j.at("place")), v};
        }
        if (kind == "freshId") {
            FreshId f{cls(j.at("class")), var(j.at("counter")), var(j.at("out")), place(j.at("place")), {}};
            for (const auto& w : j.at("associateWith"))
                f.associateWith.push_back(var(w));
            return f;
        }
        if (kind == "counterPut")
            return CounterPut{place(j.at("place")), var(j.at("counter"))};
        if (kind == "setPut")
            return SetPut{place(j.at("place")), var(j.at("var"))};
        if (kind == "emitCF") {
            EmitCF e{place(j.at("place")), std::nullopt, {}};
            if (j.contains("base"))
                e.base = var(j.at("base"));
            for (const auto& u : j.at("updates"))
                e.updates.emplace_back(cls(u.at("class")), var(u.at("var")));
            return e;
        }
        throw ParseError("unknown output effect '" + kind + "'", "/transitions/" + t.id);
    }
};

ColorSet parse_colorset(const json& j)
{
    auto c = colorset_from_string(j.get<std::string>());
    if (!c)
        throw ParseError("unknown colorset '" + j.get<std::string>() + "'", "");
    return *c;
}

} // namespace

json to_json(const Net& net)
{
    json doc;
    doc["classes"] = net.classes;
    json cardinality = json::array();
    for (std::size_t s = 0; s < net.classes.size(); ++s)
        for (std::size_t t = 0; t < net.classes.size(); ++t) {
            const auto& b = net.cardinality[s][t];
            if (b.upper == 0 && b.lower == 0 && b.goalLower == 0)
                continue;
            cardinality.push_back({{"source", net.classes[s]},
                                   {"target", net.classes[t]},
                                   {"lower", b.lower},
                                   {"goalLower", b.goalLower},
                                   {"upper", b.upper}});
        }
    doc["cardinality"] = cardinality;

    json places = json::array();
    for (const auto& p : net.places) {
        json j = {{"id", p.id}, {"colorset", to_string(p.colorset)}, {"role", to_string(p.role)}};
        if (p.cls)
            j["class"] = net.classes[*p.cls];
        if (p.role == PlaceRole::Config)
            j["state"] = p.state;
        if (p.role == PlaceRole::ControlFlow) {
            j["fragment"] = p.fragment;
            j["flow"] = {p.flow.first, p.flow.second};
        }
        places.push_back(j);
    }
    doc["places"] = places;

    json transitions = json::array();
    for (const auto& t : net.transitions) {
        Writer w{net, t};
        json origin = {{"kind", to_string(t.origin.kind)}};
        switch (t.origin.kind) {
        case OriginKind::StartEvent:
            origin["fragment"] = t.origin.fragment;
            origin["node"] = t.origin.node;
            origin["outputSet"] = t.origin.outputSet;
            break;
        case OriginKind::Activity:
            origin["fragment"] = t.origin.fragment;
            origin["node"] = t.origin.node;
            origin["inputSet"] = t.origin.inputSet;
            origin["outputSet"] = t.origin.outputSet;
            break;
        case OriginKind::Gateway:
            origin["fragment"] = t.origin.fragment;
            origin["node"] = t.origin.node;
            origin["from"] = t.origin.from;
            origin["to"] = t.origin.to;
            break;
        case OriginKind::Termination: origin["index"] = t.origin.termination; break;
        }
        json vars = json::array();
        for (const auto& v : t.vars)
            vars.push_back({{"name", v.name}, {"colorset", to_string(v.colorset)}, {"fresh", v.fresh}});
        json arcs = json::array(), guard = json::array(), outputs = json::array();
        for (const auto& a : t.arcs)
            arcs.push_back(w.arc(a));
        for (const auto& g : t.guard)
            guard.push_back(w.atom(g));
        for (const auto& o : t.outputs)
            outputs.push_back(w.output(o));
        transitions.push_back({{"id", t.id},
                               {"label", t.label},
                               {"origin", origin},
                               {"variables", vars},
                               {"arcs", arcs},
                               {"guard", guard},
                               {"outputs", outputs}});
    }
    doc["transitions"] = transitions;
    return doc;
}

Net net_from_json(const json& doc)
{
    try {
        Net net;
        net.classes = doc.at("classes").get<std::vector<std::string>>();
        net.cardinality.assign(net.classes.size(), std::vector<Bounds>(net.classes.size()));
        auto cls = [&](const json& j) {
            auto c = net.class_index(j.get<std::string>());
            if (!c)
                throw UnknownClass(j.get<std::string>());
            return *c;
        };
        if (!std::is_sorted(net.classes.begin(), net.classes.end()))
            throw ParseError("classes must be sorted", "/classes");
        for (const auto& c : doc.at("cardinality"))
            net.cardinality[cls(c.at("source"))][cls(c.at("target"))] = {
                c.at("lower").get<unsigned>(), c.at("goalLower").get<unsigned>(), c.at("upper").get<unsigned>()};

        for (const auto& p : doc.at("places")) {
            Place place;
            place.id = p.at("id").get<std::string>();
            place.colorset = parse_colorset(p.at("colorset"));
            auto role = place_role_from_string(p.at("role").get<std::string>());
            if (!role)
                throw ParseError("unknown place role", "/places/" + place.id);
            place.role = *role;
            if (p.contains("class"))
                place.cls = cls(p.at("class"));
            if (p.contains("state"))
                place.state = p.at("state").get<std::string>();
            if (p.contains("fragment"))
                place.fragment = p.at("fragment").get<std::string>();
            if (p.contains("flow"))
                place.flow = {p.at("flow").at(0).get<std::string>(), p.at("flow").at(1).get<std::string>()};
            net.places.push_back(std::move(place));
        }
        net.index();

        for (const auto& j : doc.at("transitions")) {
            Transition t;
            t.id = j.at("id").get<std::string>();
            t.label = j.at("label").get<std::string>();
            const auto& o = j.at("origin");
            auto kind = origin_kind_from_string(o.at("kind").get<std::string>());
            if (!kind)
                throw ParseError("unknown origin kind", "/transitions/" + t.id);
            t.origin.kind = *kind;
            t.origin.fragment = o.value("fragment", "");
            t.origin.node = o.value("node", "");
            t.origin.inputSet = o.value("inputSet", -1);
            t.origin.outputSet = o.value("outputSet", -1);
            t.origin.from = o.value("from", "");
            t.origin.to = o.value("to", "");
            t.origin.termination = o.value("index", -1);
            for (const auto& v : j.at("variables"))
                t.vars.push_back({v.at("name").get<std::string>(), parse_colorset(v.at("colorset")),
                                  v.at("fresh").get<bool>()});
            Reader r{net, t};
            for (const auto& a : j.at("arcs"))
                t.arcs.push_back(r.arc(a));
            for (const auto& g : j.at("guard"))
                t.guard.push_back(r.atom(g));
            for (const auto& out : j.at("outputs"))
                t.outputs.push_back(r.output(out));
            net.transitions.push_back(std::move(t));
        }
        net.index();
        return net;
    } catch (const json::exception& e) {
        throw ParseError(e.what(), "");
    }
}

std::string serialize_net(const Net& net, int indent)
{
    return to_json(net).dump(indent);
}

namespace {

json id_json(const Net& net, Id id)
{
    return json::array({net.classes.at(id.cls), id.n});
}

} // namespace

Id id_from_json(const Net& net, const json& j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_number_integer() || j[1].get<std::int64_t>() < 0)
        throw ParseError("expected an id [\"Class\", n]", "");
    auto c = net.class_index(j[0].get<std::string>());
    if (!c)
        throw UnknownClass(j[0].get<std::string>());
    return Id{*c, j[1].get<std::uint32_t>()};
}

json value_to_json(const Net& net, const ColorValue& value)
{
    return std::visit(overloaded{
                          [](const Unit&) -> json { return nullptr; },
                          [](std::uint64_t v) -> json { return v; },
                          [&](const Id& id) -> json { return id_json(net, id); },
                          [&](const IdSet& s) -> json {
                              json a = json::array();
                              for (auto id : s.items)
                                  a.push_back(id_json(net, id));
                              return a;
                          },
                          [&](const AssocSet& s) -> json {
                              json a = json::array();
                              for (const auto& p : s.pairs)
                                  a.push_back(json::array({id_json(net, p.first), id_json(net, p.second)}));
                              return a;
                          },
                          [&](const CFMap& m) -> json {
                              json o = json::object();
                              for (std::size_t c = 0; c < m.slots.size(); ++c)
                                  o[net.classes.at(c)] = m.slots[c] ? id_json(net, *m.slots[c]) : json(nullptr);
                              return o;
                          },
                      },
                      value);
}

ColorValue value_from_json(const Net& net, ColorSet colorset, const json& j)
{
    switch (colorset) {
    case ColorSet::Unit:
        if (!j.is_null())
            throw ParseError("expected null for a unit token", "");
        return Unit{};
    case ColorSet::Int:
        if (!j.is_number_unsigned())
            throw ParseError("expected an unsigned integer", "");
        return j.get<std::uint64_t>();
    case ColorSet::Id: return id_from_json(net, j);
    case ColorSet::IdSet: {
        if (!j.is_array())
            throw ParseError("expected a list of ids", "");
        IdSet s;
        for (const auto& e : j)
            s.items.push_back(id_from_json(net, e));
        std::sort(s.items.begin(), s.items.end());
        s.items.erase(std::unique(s.items.begin(), s.items.end()), s.items.end());
        return s;
    }
    case ColorSet::AssocSet: {
        if (!j.is_array())
            throw ParseError("expected a list of id pairs", "");
        AssocSet s;
        for (const auto& e : j) {
            if (!e.is_array() || e.size() != 2)
                throw ParseError("expected an id pair", "");
            auto a = id_from_json(net, e[0]);
            auto b = id_from_json(net, e[1]);
            if (a == b)
                throw ParseError("an association needs two distinct objects", "");
            s.pairs.push_back(Assoc::of(a, b));
        }
        std::sort(s.pairs.begin(), s.pairs.end());
        s.pairs.erase(std::unique(s.pairs.begin(), s.pairs.end()), s.pairs.end());
        return s;
    }
    case ColorSet::CFMap: {
        if (!j.is_object())
            throw ParseError("expected a control-flow object", "");
        CFMap m;
        m.slots.resize(net.classes.size());
        for (const auto& [name, slot] : j.items()) {
            auto c = net.class_index(name);
            if (!c)
                throw UnknownClass(name);
            if (!slot.is_null())
                m.slots[*c] = id_from_json(net, slot);
        }
        return m;
    }
    }
    return Unit{};
}

json marking_to_json(const Net& net, const Marking& marking)
{
    json doc = json::object();
    for (PlaceIndex p = 0; p < net.places.size(); ++p) {
        if (marking.tokens[p].empty())
            continue;
        json list = json::array();
        for (const auto& v : marking.tokens[p])
            list.push_back(value_to_json(net, v));
        doc[net.places[p].id] = list;
    }
    return doc;
}

Marking marking_from_json(const Net& net, const json& doc)
{
    if (!doc.is_object())
        throw ParseError("expected a marking object", "/marking");
    Marking m;
    m.tokens.resize(net.places.size());
    for (const auto& [id, list] : doc.items()) {
        auto p = net.place_index(id);
        if (!p)
            throw ParseError("unknown place '" + id + "'", "/marking/" + id);
        if (!list.is_array())
            throw ParseError("expected a token list", "/marking/" + id);
        for (const auto& v : list)
            m.add(*p, value_from_json(net, net.places[*p].colorset, v));
    }
    return m;
}

json binding_to_json(const Net& net, const Transition& t, const Binding& binding)
{
    json doc = json::object();
    for (std::size_t v = 0; v < binding.size(); ++v)
        doc[t.vars[v].name] = value_to_json(net, binding[v]);
    return doc;
}

Binding binding_from_json(const Net& net, const Transition& t, const json& doc)
{
    if (!doc.is_object())
        throw ParseError("expected a binding object", "");
    Binding b;
    for (std::size_t v = 0; v < t.binding_size(); ++v) {
        auto it = doc.find(t.vars[v].name);
        if (it == doc.end())
            throw ParseError("binding lacks variable '" + t.vars[v].name + "'", "");
        b.push_back(value_from_json(net, t.vars[v].colorset, *it));
    }
    return b;
}

} // namespace fcm
