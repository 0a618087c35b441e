// fcm: validate, compile, explore, run and serve case models.

#include "fcm/compiler.hpp"
#include "fcm/engine.hpp"
#include "fcm/error.hpp"
#include "fcm/explorer.hpp"
#include "fcm/model_io.hpp"
#include "fcm/net_io.hpp"
#include "fcm/service.hpp"
#include "fcm/validate.hpp"

#include "CLI11.hpp"
#include "httplib.h"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kParseError = 2;

void print_violations(const std::vector<fcm::Violation>& violations)
{
    for (const auto& v : violations)
        std::cout << fcm::to_string(v.code) << "  " << v.subject << ": " << v.message << "\n";
    std::cout << violations.size() << (violations.size() == 1 ? " violation" : " violations") << "\n";
}

bool write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return false;
    }
    return true;
}

int cmd_validate(const std::string& path)
{
    auto model = fcm::load_case_model(path);
    auto violations = fcm::validate(model);
    print_violations(violations);
    return violations.empty() ? kOk : kViolations;
}

int cmd_compile(const std::string& path, const std::string& output, const std::string& dot)
{
    auto model = fcm::load_case_model(path);
    auto violations = fcm::validate(model);
    if (!violations.empty()) {
        print_violations(violations);
        return kViolations;
    }
    auto compiled = fcm::compile(model);
    if (!output.empty() && !write_file(output, fcm::serialize_net(compiled.net) + "\n"))
        return kViolations;
    if (!dot.empty() && !write_file(dot, fcm::export_dot(compiled.net)))
        return kViolations;
    std::cout << fcm::to_json(compiled.report).dump(2) << "\n";
    return kOk;
}

int cmd_explore(const std::string& path, std::size_t maxStates, std::size_t maxDepth)
{
    auto model = fcm::load_case_model(path);
    auto violations = fcm::validate(model);
    if (!violations.empty()) {
        print_violations(violations);
        return kViolations;
    }
    auto compiled = fcm::compile(model);
    auto report = fcm::explore(compiled.net, {maxStates, maxDepth});
    std::cout << fcm::to_json(report).dump(2) << "\n";
    return report.violations.empty() ? kOk : kViolations;
}

std::optional<json> read_attribute(const fcm::AttributeSpec& spec, const std::string& text)
{
    switch (spec.type) {
    case fcm::AttributeType::String: return json(text);
    case fcm::AttributeType::Integer:
        try {
            std::size_t used = 0;
            long long v = std::stoll(text, &used);
            if (used == text.size())
                return json(v);
        } catch (const std::exception&) {
        }
        return std::nullopt;
    case fcm::AttributeType::Boolean:
        if (text == "true" || text == "yes" || text == "y")
            return json(true);
        if (text == "false" || text == "no" || text == "n")
            return json(false);
        return std::nullopt;
    }
    return std::nullopt;
}

int cmd_run(const std::string& path, const std::string& snapshotOut)
{
    fcm::Engine engine(fcm::load_case_model(path));
    auto state = engine.create_case();
    std::cout << "case " << state.caseId << " on model " << engine.model_hash() << "\n";

    std::string line;
    while (state.status != fcm::CaseStatus::Terminated) {
        auto options = engine.enabled_steps(state);
        if (options.empty()) {
            std::cout << "no enabled steps; the case is stuck\n";
            break;
        }
        std::cout << "\n";
        for (std::size_t k = 0; k < options.size(); ++k) {
            std::cout << "  [" << k + 1 << "] " << options[k].label;
            for (const auto& [var, value] : options[k].summary)
                std::cout << "  " << var << "=" << value;
            std::cout << "\n";
        }
        std::cout << "step (number, q to quit)> " << std::flush;
        if (!std::getline(std::cin, line) || line == "q")
            break;
        std::size_t choice = 0;
        try {
            choice = std::stoul(line);
        } catch (const std::exception&) {
        }
        if (choice == 0 || choice > options.size()) {
            std::cout << "no such option\n";
            continue;
        }
        const auto& option = options[choice - 1];
        json attributes = json::object();
        bool aborted = false;
        for (const auto& form : option.requiredForms) {
            for (const auto& a : form.attributes) {
                for (;;) {
                    std::cout << "  " << form.key << "." << a.name << " (" << fcm::to_string(a.type)
                              << (form.created ? "" : ", empty to keep") << ")> " << std::flush;
                    if (!std::getline(std::cin, line)) {
                        aborted = true;
                        break;
                    }
                    if (line.empty() && !form.created)
                        break;
                    if (auto v = read_attribute(a, line)) {
                        attributes[form.key][a.name] = *v;
                        break;
                    }
                    std::cout << "  not a " << fcm::to_string(a.type) << "\n";
                }
                if (aborted)
                    break;
            }
            if (aborted)
                break;
        }
        if (aborted)
            break;
        state = engine.apply_step(state, option, attributes);
    }
    std::cout << engine.describe(state).dump(2) << "\n";
    if (!snapshotOut.empty() && !write_file(snapshotOut, engine.snapshot(state).dump(2) + "\n"))
        return kViolations;
    return kOk;
}

int cmd_serve(const std::string& directory, std::string host, int port)
{
    if (const char* env = std::getenv("FCM_PORT"))
        port = std::atoi(env);
    fcm::Service service;
    for (const auto& failed : service.load_directory(directory))
        std::cerr << "skipping model " << failed << ": does not load or validate\n";

    httplib::Server server;
    auto handler = [&](const httplib::Request& req, httplib::Response& res) {
        auto response = service.handle(req.method, req.path, req.body);
        res.status = response.status;
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_content(response.body, response.contentType.c_str());
    };
    server.Get(".*", handler);
    server.Post(".*", handler);
    server.Put(".*", handler);
    server.Options(".*", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
    std::cout << "listening on http://" << host << ":" << port << "\n" << std::flush;
    if (!server.listen(host, port)) {
        std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
        return kViolations;
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fragment-based case models: validation, compilation to colored Petri nets, execution"};
    app.require_subcommand(1);

    std::string model, output, dot, directory, snapshot, host = "127.0.0.1";
    std::size_t maxStates = 100000, maxDepth = std::numeric_limits<std::size_t>::max();
    int port = 8080;

    auto* validate = app.add_subcommand("validate", "Check a model and list violations");
    validate->add_option("model", model, "Model document")->required();

    auto* compile = app.add_subcommand("compile", "Translate a model into a net");
    compile->add_option("model", model, "Model document")->required();
    compile->add_option("-o,--output", output, "Write the net JSON here");
    compile->add_option("--dot", dot, "Write a Graphviz rendering here");

    auto* explore = app.add_subcommand("explore", "Explore the reachable markings");
    explore->add_option("model", model, "Model document")->required();
    explore->add_option("--max-states", maxStates, "Stop after this many markings");
    explore->add_option("--max-depth", maxDepth, "Do not fire beyond this depth");

    auto* run = app.add_subcommand("run", "Execute a case interactively");
    run->add_option("model", model, "Model document")->required();
    run->add_option("--snapshot", snapshot, "Write the final case snapshot here");

    auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
    serve->add_option("model-dir", directory, "Directory of model documents")->required();
    serve->add_option("--port", port, "Port (FCM_PORT overrides)");
    serve->add_option("--host", host, "Address to bind");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate)
            return cmd_validate(model);
        if (*compile)
            return cmd_compile(model, output, dot);
        if (*explore)
            return cmd_explore(model, maxStates, maxDepth);
        if (*run)
            return cmd_run(model, snapshot);
        if (*serve)
            return cmd_serve(directory, host, port);
    } catch (const fcm::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const fcm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kViolations;
    }
    return kOk;
}
