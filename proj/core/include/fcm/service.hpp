#pragma once

// Transport-independent HTTP API over models and cases. The `serve` command
// plugs `Service::handle` into an HTTP server.

#include "fcm/engine.hpp"

#include <filesystem>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>

namespace fcm {

struct HttpResponse
{
    int status = 200;
    std::string body;
    std::string contentType = "application/json";
};

class Service
{
public:
    Service() = default;

    /// Loads every *.json model in `directory`; the file stem is the model
    /// id. Returns the ids of files that failed to load or validate.
    std::vector<std::string> load_directory(const std::filesystem::path& directory);

    /// Throws CompileError for invalid models.
    void add_model(const std::string& id, CaseModel model);

    HttpResponse handle(std::string_view method, std::string_view target, std::string_view body);

private:
    struct CaseEntry
    {
        std::mutex mutex;
        std::shared_ptr<const Engine> engine;
        std::string modelId;
        CaseState state;
    };

    HttpResponse get_models() const;
    HttpResponse post_model(std::string_view body);
    HttpResponse post_case(std::string_view body);
    HttpResponse case_request(std::string_view method, const std::string& caseId, const std::string& rest,
                              std::string_view body);

    std::shared_ptr<const Engine> engine(const std::string& modelId) const;
    std::shared_ptr<CaseEntry> find_case(const std::string& caseId) const;

    mutable std::shared_mutex _mutex;
    std::map<std::string, std::shared_ptr<const Engine>> _models;
    std::unordered_map<std::string, std::shared_ptr<CaseEntry>> _cases;
};

} // namespace fcm
