#include "fcm/model_io.hpp"

#include "fcm/error.hpp"
#include "fcm/hash.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace fcm {

using nlohmann::json;

namespace {

std::string child(const std::string& path, std::string_view key)
{
    return path + "/" + std::string(key);
}

std::string child(const std::string& path, std::size_t index)
{
    return path + "/" + std::to_string(index);
}

void require_type(const json& value, json::value_t type, const std::string& path, const char* what)
{
    bool ok = value.type() == type;
    if (type == json::value_t::number_unsigned)
        ok = value.is_number_unsigned() || (value.is_number_integer() && value.get<long long>() >= 0);
    if (!ok)
        throw ParseError(std::string("expected ") + what, path);
}

const json& require_array(const json& value, const std::string& path)
{
    require_type(value, json::value_t::array, path, "an array");
    return value;
}

/// Rejects keys outside `allowed` and gives typed access to members.
class ObjectReader
{
public:
    ObjectReader(const json& object, std::string path, std::initializer_list<std::string_view> allowed)
        : _object(object), _path(std::move(path))
    {
        require_type(object, json::value_t::object, _path, "an object");
        for (const auto& [key, _] : object.items()) {
            bool known = false;
            for (auto a : allowed)
                known = known || a == key;
            if (!known)
                throw ParseError("unknown key '" + key + "'", child(_path, key));
        }
    }

    bool has(std::string_view key) const { return _object.contains(std::string(key)); }

    const json& at(std::string_view key) const
    {
        auto it = _object.find(std::string(key));
        if (it == _object.end())
            throw ParseError("missing key '" + std::string(key) + "'", _path);
        return *it;
    }

    std::string string(std::string_view key) const
    {
        const auto& v = at(key);
        require_type(v, json::value_t::string, path(key), "a string");
        auto s = v.get<std::string>();
        if (s.empty())
            throw ParseError("expected a non-empty string", path(key));
        return s;
    }

    std::string string_or(std::string_view key, std::string fallback) const
    {
        if (!has(key))
            return fallback;
        const auto& v = at(key);
        require_type(v, json::value_t::string, path(key), "a string");
        return v.get<std::string>();
    }

    bool boolean_or(std::string_view key, bool fallback) const
    {
        if (!has(key))
            return fallback;
        const auto& v = at(key);
        require_type(v, json::value_t::boolean, path(key), "a boolean");
        return v.get<bool>();
    }

    unsigned natural(std::string_view key) const
    {
        const auto& v = at(key);
        require_type(v, json::value_t::number_unsigned, path(key), "a non-negative integer");
        return v.get<unsigned>();
    }

    std::string path(std::string_view key) const { return child(_path, key); }

private:
    const json& _object;
    std::string _path;
};

std::string plain_string(const json& value, const std::string& path)
{
    require_type(value, json::value_t::string, path, "a string");
    auto s = value.get<std::string>();
    if (s.empty())
        throw ParseError("expected a non-empty string", path);
    return s;
}

Flow parse_pair(const json& value, const std::string& path)
{
    require_array(value, path);
    if (value.size() != 2)
        throw ParseError("expected a [from, to] pair", path);
    return {plain_string(value[0], child(path, 0)), plain_string(value[1], child(path, 1))};
}

OlcTransition parse_olc_transition(const json& value, const std::string& path)
{
    if (value.is_array()) {
        auto [from, to] = parse_pair(value, path);
        return {from, to, {}};
    }
    ObjectReader r(value, path, {"from", "to", "guards"});
    OlcTransition t{r.string("from"), r.string("to"), {}};
    if (r.has("guards")) {
        const auto& guards = require_array(r.at("guards"), r.path("guards"));
        for (std::size_t i = 0; i < guards.size(); ++i) {
            ObjectReader g(guards[i], child(r.path("guards"), i), {"dependent", "minCount"});
            t.guards.push_back({g.string("dependent"), g.natural("minCount")});
        }
    }
    return t;
}

ClassDecl parse_class(const json& value, const std::string& path)
{
    ObjectReader r(value, path, {"name", "isCaseClass", "attributes", "states", "transitions"});
    ClassDecl c;
    c.name = r.string("name");
    c.isCaseClass = r.boolean_or("isCaseClass", false);
    if (r.has("attributes")) {
        const auto& attrs = require_array(r.at("attributes"), r.path("attributes"));
        for (std::size_t i = 0; i < attrs.size(); ++i) {
            ObjectReader a(attrs[i], child(r.path("attributes"), i), {"name", "type", "required"});
            auto type = attribute_type_from_string(a.string("type"));
            if (!type)
                throw ParseError("attribute type must be string, integer or boolean", a.path("type"));
            c.attributes.push_back({a.string("name"), *type, a.boolean_or("required", true)});
        }
    }
    const auto& states = require_array(r.at("states"), r.path("states"));
    for (std::size_t i = 0; i < states.size(); ++i)
        c.olc.states.push_back(plain_string(states[i], child(r.path("states"), i)));
    if (r.has("transitions")) {
        const auto& ts = require_array(r.at("transitions"), r.path("transitions"));
        for (std::size_t i = 0; i < ts.size(); ++i)
            c.olc.transitions.push_back(parse_olc_transition(ts[i], child(r.path("transitions"), i)));
    }
    return c;
}

Association parse_association(const json& value, const std::string& path)
{
    ObjectReader r(value, path,
                   {"classA", "classB", "lowerAperB", "goalLowerAperB", "upperAperB", "lowerBperA", "goalLowerBperA",
                    "upperBperA"});
    Association a;
    a.classA = r.string("classA");
    a.classB = r.string("classB");
    a.aPerB.lower = r.natural("lowerAperB");
    a.aPerB.goalLower = r.has("goalLowerAperB") ? r.natural("goalLowerAperB") : a.aPerB.lower;
    a.aPerB.upper = r.natural("upperAperB");
    a.bPerA.lower = r.natural("lowerBperA");
    a.bPerA.goalLower = r.has("goalLowerBperA") ? r.natural("goalLowerBperA") : a.bPerA.lower;
    a.bPerA.upper = r.natural("upperBperA");
    return a;
}

IOSet parse_io_set(const json& value, const std::string& path)
{
    require_array(value, path);
    IOSet set;
    for (std::size_t i = 0; i < value.size(); ++i) {
        ObjectReader e(value[i], child(path, i), {"class", "state", "collection"});
        set.entries.push_back({e.string("class"), e.string("state"), e.boolean_or("collection", false)});
    }
    return set;
}

std::map<std::string, std::vector<IOSet>> parse_io_sets(const json& value, const std::string& path)
{
    require_type(value, json::value_t::object, path, "an object keyed by node id");
    std::map<std::string, std::vector<IOSet>> result;
    for (const auto& [node, lists] : value.items()) {
        auto nodePath = child(path, node);
        require_array(lists, nodePath);
        auto& sets = result[node];
        for (std::size_t i = 0; i < lists.size(); ++i)
            sets.push_back(parse_io_set(lists[i], child(nodePath, i)));
    }
    return result;
}

Fragment parse_fragment(const json& value, const std::string& path)
{
    ObjectReader r(value, path, {"id", "nodes", "flows", "inputSets", "outputSets"});
    Fragment f;
    f.id = r.string("id");
    const auto& nodes = require_array(r.at("nodes"), r.path("nodes"));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        ObjectReader n(nodes[i], child(r.path("nodes"), i), {"id", "type", "label"});
        auto kind = node_kind_from_string(n.string("type"));
        if (!kind)
            throw ParseError("node type must be activity, gateway or startEvent", n.path("type"));
        auto id = n.string("id");
        f.nodes.push_back({id, *kind, n.string_or("label", id)});
    }
    if (r.has("flows")) {
        const auto& flows = require_array(r.at("flows"), r.path("flows"));
        for (std::size_t i = 0; i < flows.size(); ++i)
            f.flows.push_back(parse_pair(flows[i], child(r.path("flows"), i)));
    }
    if (r.has("inputSets"))
        f.inputSets = parse_io_sets(r.at("inputSets"), r.path("inputSets"));
    if (r.has("outputSets"))
        f.outputSets = parse_io_sets(r.at("outputSets"), r.path("outputSets"));
    return f;
}

json io_sets_to_json(const std::map<std::string, std::vector<IOSet>>& sets)
{
    json result = json::object();
    for (const auto& [node, list] : sets) {
        json lists = json::array();
        for (const auto& set : list) {
            json entries = json::array();
            for (const auto& e : set.entries)
                entries.push_back({{"class", e.cls}, {"state", e.state}, {"collection", e.collection}});
            lists.push_back(std::move(entries));
        }
        result[node] = std::move(lists);
    }
    return result;
}

} // namespace

CaseModel case_model_from_json(const json& document)
{
    ObjectReader root(document, "", {"classes", "constraints", "fragments", "terminationConditions"});
    for (auto section : {"classes", "fragments", "terminationConditions"})
        if (!root.has(section))
            throw MissingSection(section);

    CaseModel m;
    const auto& classes = require_array(root.at("classes"), "/classes");
    for (std::size_t i = 0; i < classes.size(); ++i)
        m.classes.push_back(parse_class(classes[i], child("/classes", i)));

    if (root.has("constraints")) {
        const auto& cs = require_array(root.at("constraints"), "/constraints");
        for (std::size_t i = 0; i < cs.size(); ++i)
            m.associations.push_back(parse_association(cs[i], child("/constraints", i)));
    }

    const auto& fragments = require_array(root.at("fragments"), "/fragments");
    for (std::size_t i = 0; i < fragments.size(); ++i)
        m.fragments.push_back(parse_fragment(fragments[i], child("/fragments", i)));

    const auto& conditions = require_array(root.at("terminationConditions"), "/terminationConditions");
    for (std::size_t i = 0; i < conditions.size(); ++i) {
        auto condPath = child("/terminationConditions", i);
        require_array(conditions[i], condPath);
        DataCondition d;
        for (std::size_t j = 0; j < conditions[i].size(); ++j) {
            ObjectReader c(conditions[i][j], child(condPath, j), {"class", "state"});
            d.configurations.push_back({c.string("class"), c.string("state")});
        }
        m.terminationConditions.push_back(std::move(d));
    }
    return m;
}

CaseModel parse_case_model(std::string_view text)
{
    json document;
    try {
        document = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), "byte " + std::to_string(e.byte));
    }
    return case_model_from_json(document);
}

CaseModel load_case_model(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open file", path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_case_model(buffer.str());
}

json to_json(const CaseModel& model)
{
    json classes = json::array();
    for (const auto& c : model.classes) {
        json attrs = json::array();
        for (const auto& a : c.attributes)
            attrs.push_back({{"name", a.name}, {"type", std::string(to_string(a.type))}, {"required", a.required}});
        json transitions = json::array();
        for (const auto& t : c.olc.transitions) {
            if (t.guards.empty()) {
                transitions.push_back(json::array({t.from, t.to}));
                continue;
            }
            json guards = json::array();
            for (const auto& g : t.guards)
                guards.push_back({{"dependent", g.dependentClass}, {"minCount", g.minCount}});
            transitions.push_back({{"from", t.from}, {"to", t.to}, {"guards", std::move(guards)}});
        }
        classes.push_back({{"name", c.name},
                           {"isCaseClass", c.isCaseClass},
                           {"attributes", std::move(attrs)},
                           {"states", c.olc.states},
                           {"transitions", std::move(transitions)}});
    }

    json constraints = json::array();
    for (const auto& a : model.associations) {
        constraints.push_back({{"classA", a.classA},
                               {"classB", a.classB},
                               {"lowerAperB", a.aPerB.lower},
                               {"goalLowerAperB", a.aPerB.goalLower},
                               {"upperAperB", a.aPerB.upper},
                               {"lowerBperA", a.bPerA.lower},
                               {"goalLowerBperA", a.bPerA.goalLower},
                               {"upperBperA", a.bPerA.upper}});
    }

    json fragments = json::array();
    for (const auto& f : model.fragments) {
        json nodes = json::array();
        for (const auto& n : f.nodes)
            nodes.push_back({{"id", n.id}, {"type", std::string(to_string(n.kind))}, {"label", n.label}});
        json flows = json::array();
        for (const auto& [src, tgt] : f.flows)
            flows.push_back(json::array({src, tgt}));
        fragments.push_back({{"id", f.id},
                             {"nodes", std::move(nodes)},
                             {"flows", std::move(flows)},
                             {"inputSets", io_sets_to_json(f.inputSets)},
                             {"outputSets", io_sets_to_json(f.outputSets)}});
    }

    json conditions = json::array();
    for (const auto& d : model.terminationConditions) {
        json configs = json::array();
        for (const auto& c : d.configurations)
            configs.push_back({{"class", c.cls}, {"state", c.state}});
        conditions.push_back(std::move(configs));
    }

    return {{"classes", std::move(classes)},
            {"constraints", std::move(constraints)},
            {"fragments", std::move(fragments)},
            {"terminationConditions", std::move(conditions)}};
}

std::string serialize_case_model(const CaseModel& model, int indent)
{
    return to_json(model).dump(indent);
}

std::string model_hash(const CaseModel& model)
{
    return to_hex(fnv1a(to_json(model).dump()));
}

} // namespace fcm
