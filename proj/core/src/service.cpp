#include "fcm/service.hpp"

#include "fcm/compiler.hpp"
#include "fcm/error.hpp"
#include "fcm/model_io.hpp"
#include "fcm/net_io.hpp"
#include "fcm/validate.hpp"

#include <algorithm>

namespace fcm {

using nlohmann::json;

namespace {

HttpResponse reply(int status, const json& body)
{
    return {status, body.dump(2), "application/json"};
}

HttpResponse error(int status, std::string_view kind, const std::string& message)
{
    return reply(status, {{"error", kind}, {"message", message}});
}

json violations_json(const std::vector<Violation>& violations)
{
    json list = json::array();
    for (const auto& v : violations)
        list.push_back({{"code", to_string(v.code)}, {"subject", v.subject}, {"message", v.message}});
    return list;
}

std::vector<std::string> split_path(std::string_view target)
{
    if (auto q = target.find('?'); q != std::string_view::npos)
        target = target.substr(0, q);
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= target.size()) {
        auto end = target.find('/', start);
        if (end == std::string_view::npos)
            end = target.size();
        if (end > start)
            parts.emplace_back(target.substr(start, end - start));
        start = end + 1;
    }
    return parts;
}

json parse_body(std::string_view body)
{
    if (body.empty())
        return json::object();
    return json::parse(body);
}

} // namespace

std::vector<std::string> Service::load_directory(const std::filesystem::path& directory)
{
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(directory))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::vector<std::string> failed;
    for (const auto& file : files) {
        try {
            add_model(file.stem().string(), load_case_model(file));
        } catch (const Error&) {
            failed.push_back(file.stem().string());
        }
    }
    return failed;
}

void Service::add_model(const std::string& id, CaseModel model)
{
    auto engine = std::make_shared<const Engine>(std::move(model));
    std::unique_lock lock(_mutex);
    _models[id] = std::move(engine);
}

std::shared_ptr<const Engine> Service::engine(const std::string& modelId) const
{
    std::shared_lock lock(_mutex);
    auto it = _models.find(modelId);
    return it == _models.end() ? nullptr : it->second;
}

std::shared_ptr<Service::CaseEntry> Service::find_case(const std::string& caseId) const
{
    std::shared_lock lock(_mutex);
    auto it = _cases.find(caseId);
    return it == _cases.end() ? nullptr : it->second;
}

HttpResponse Service::handle(std::string_view method, std::string_view target, std::string_view body)
{
    auto parts = split_path(target);
    try {
        if (parts.size() == 1 && parts[0] == "models") {
            if (method == "GET")
                return get_models();
            if (method == "POST")
                return post_model(body);
            return error(405, "MethodNotAllowed", "use GET or POST");
        }
        if (parts.size() >= 2 && parts[0] == "models") {
            auto e = engine(parts[1]);
            if (!e)
                return error(404, "NotFound", "no model '" + parts[1] + "'");
            if (method != "GET")
                return error(405, "MethodNotAllowed", "use GET");
            if (parts.size() == 2)
                return reply(200, to_json(e->model()));
            if (parts.size() == 3 && parts[2] == "net.dot")
                return {200, export_dot(e->net()), "text/vnd.graphviz"};
            if (parts.size() == 3 && parts[2] == "net")
                return reply(200, to_json(e->net()));
            return error(404, "NotFound", "unknown resource");
        }
        if (parts.size() == 1 && parts[0] == "cases") {
            if (method == "POST")
                return post_case(body);
            if (method == "GET") {
                std::shared_lock lock(_mutex);
                json ids = json::array();
                for (const auto& [id, _] : _cases)
                    ids.push_back(id);
                std::sort(ids.begin(), ids.end());
                return reply(200, ids);
            }
            return error(405, "MethodNotAllowed", "use GET or POST");
        }
        if (parts.size() >= 2 && parts[0] == "cases") {
            std::string rest;
            for (std::size_t k = 2; k < parts.size(); ++k)
                rest += (k > 2 ? "/" : "") + parts[k];
            return case_request(method, parts[1], rest, body);
        }
        return error(404, "NotFound", "unknown resource");
    } catch (const json::exception& e) {
        return error(400, "BadRequest", e.what());
    }
}

HttpResponse Service::get_models() const
{
    std::shared_lock lock(_mutex);
    json list = json::array();
    for (const auto& [id, e] : _models)
        list.push_back({{"id", id},
                        {"hash", e->model_hash()},
                        {"classes", e->model().classes.size()},
                        {"fragments", e->model().fragments.size()},
                        {"places", e->report().places},
                        {"transitions", e->report().transitions}});
    return reply(200, list);
}

HttpResponse Service::post_model(std::string_view body)
{
    auto doc = parse_body(body);
    std::string id;
    json modelDoc = doc;
    if (doc.is_object() && doc.contains("model")) {
        modelDoc = doc.at("model");
        if (doc.contains("id"))
            id = doc.at("id").get<std::string>();
    }
    CaseModel model;
    try {
        model = case_model_from_json(modelDoc);
    } catch (const ParseError& e) {
        return reply(400, {{"error", "ParseError"}, {"message", e.what()}, {"location", e.location()}});
    }
    auto violations = validate(model);
    if (!violations.empty())
        return reply(422, {{"error", "ValidationFailed"}, {"violations", violations_json(violations)}});
    if (id.empty())
        id = "model-" + model_hash(model).substr(0, 8);
    if (engine(id))
        return error(409, "Conflict", "model '" + id + "' already exists");
    add_model(id, std::move(model));
    auto e = engine(id);
    return reply(201, {{"id", id}, {"hash", e->model_hash()}, {"transitions", e->report().transitions}});
}

HttpResponse Service::post_case(std::string_view body)
{
    auto doc = parse_body(body);
    if (!doc.is_object() || !doc.contains("modelId") || !doc.at("modelId").is_string())
        return error(400, "BadRequest", "expected {\"modelId\": ...}");
    auto modelId = doc.at("modelId").get<std::string>();
    auto e = engine(modelId);
    if (!e)
        return error(404, "NotFound", "no model '" + modelId + "'");
    auto entry = std::make_shared<CaseEntry>();
    entry->engine = e;
    entry->modelId = modelId;
    entry->state = e->create_case();
    auto caseId = entry->state.caseId;
    {
        std::unique_lock lock(_mutex);
        _cases[caseId] = entry;
    }
    return reply(201, {{"caseId", caseId}, {"modelId", modelId}, {"status", to_string(entry->state.status)}});
}

HttpResponse Service::case_request(std::string_view method, const std::string& caseId, const std::string& rest,
                                   std::string_view body)
{
    if (rest == "snapshot" && method == "PUT") {
        auto doc = parse_body(body);
        auto entry = find_case(caseId);
        std::shared_ptr<const Engine> e = entry ? entry->engine : nullptr;
        std::string modelId = entry ? entry->modelId : "";
        if (!e) {
            auto hash = doc.is_object() ? doc.value("modelHash", "") : "";
            std::shared_lock lock(_mutex);
            for (const auto& [id, candidate] : _models)
                if (candidate->model_hash() == hash) {
                    e = candidate;
                    modelId = id;
                    break;
                }
            if (!e)
                return error(409, "VersionMismatch", "no loaded model has hash '" + hash + "'");
        }
        try {
            auto state = e->restore(doc);
            state.caseId = caseId;
            if (entry) {
                std::lock_guard lock(entry->mutex);
                entry->state = std::move(state);
            } else {
                auto created = std::make_shared<CaseEntry>();
                created->engine = e;
                created->modelId = modelId;
                created->state = std::move(state);
                std::unique_lock lock(_mutex);
                _cases[caseId] = created;
                entry = created;
            }
            std::lock_guard lock(entry->mutex);
            return reply(200, e->describe(entry->state));
        } catch (const VersionMismatch& ex) {
            return error(409, "VersionMismatch", ex.what());
        } catch (const Error& ex) {
            return error(422, "InvalidSnapshot", ex.what());
        }
    }

    auto entry = find_case(caseId);
    if (!entry)
        return error(404, "NotFound", "no case '" + caseId + "'");
    std::lock_guard lock(entry->mutex);
    const auto& e = *entry->engine;

    try {
        if (rest.empty() && method == "GET") {
            auto d = e.describe(entry->state);
            d["modelId"] = entry->modelId;
            return reply(200, d);
        }
        if (rest == "steps" && method == "GET") {
            json steps = json::array();
            for (const auto& option : e.enabled_steps(entry->state))
                steps.push_back(to_json(option));
            return reply(200, {{"caseId", caseId}, {"steps", steps}});
        }
        if (rest == "steps" && method == "POST") {
            auto doc = parse_body(body);
            if (!doc.is_object() || !doc.contains("optionId") || !doc.at("optionId").is_string())
                return error(400, "BadRequest", "expected {\"optionId\": ..., \"attributes\": {...}}");
            auto attributes = doc.value("attributes", json::object());
            entry->state = e.apply_step(entry->state, doc.at("optionId").get<std::string>(), attributes);
            return reply(200, e.describe(entry->state));
        }
        if (rest == "terminable" && method == "GET") {
            auto conditions = e.terminable(entry->state);
            return reply(200, {{"caseId", caseId},
                               {"status", to_string(entry->state.status)},
                               {"terminable", !conditions.empty()},
                               {"conditions", conditions}});
        }
        if (rest == "snapshot" && method == "GET")
            return reply(200, e.snapshot(entry->state));
    } catch (const CaseTerminated& ex) {
        return error(409, "CaseTerminated", ex.what());
    } catch (const StaleOption& ex) {
        return error(409, "StaleOption", ex.what());
    } catch (const SchemaError& ex) {
        return error(422, "SchemaError", ex.what());
    }
    return error(404, "NotFound", "unknown resource");
}

} // namespace fcm
