#include "scenario.hpp"

#include "fcm/model_io.hpp"

#include <algorithm>
#include <stdexcept>

namespace fcm::testing {

std::filesystem::path models_dir()
{
    return FCM_MODELS_DIR;
}

CaseModel load_fixture(const std::string& name)
{
    return load_case_model(models_dir() / name);
}

std::optional<StepOption> find_option(const std::vector<StepOption>& options, const std::string& transitionId,
                                      const std::map<std::string, std::string>& bound)
{
    for (const auto& o : options) {
        if (o.transitionId != transitionId)
            continue;
        bool matches = std::all_of(bound.begin(), bound.end(), [&](const auto& kv) {
            return std::find(o.summary.begin(), o.summary.end(), std::pair<std::string, std::string>(kv)) !=
                   o.summary.end();
        });
        if (matches)
            return o;
    }
    return std::nullopt;
}

std::vector<std::string> transition_ids(const std::vector<StepOption>& options)
{
    std::vector<std::string> ids;
    for (const auto& o : options)
        ids.push_back(o.transitionId);
    return ids;
}

CaseState step(const Engine& engine, const CaseState& state, const std::string& transitionId,
               const std::map<std::string, std::string>& bound, const nlohmann::json& attributes)
{
    auto options = engine.enabled_steps(state);
    auto option = find_option(options, transitionId, bound);
    if (!option) {
        std::string msg = "no enabled option " + transitionId;
        for (const auto& [k, v] : bound)
            msg += " " + k + "=" + v;
        msg += "; enabled:";
        for (const auto& o : options) {
            msg += "\n  " + o.transitionId;
            for (const auto& [k, v] : o.summary)
                msg += " " + k + "=" + v;
        }
        throw std::runtime_error(msg);
    }
    return engine.apply_step(state, *option, attributes);
}

CaseState conference_walkthrough(const Engine& engine, std::vector<CaseState>* trace)
{
    using nlohmann::json;
    auto state = engine.create_case();
    auto go = [&](const std::string& tid, const std::map<std::string, std::string>& bound = {},
                  const json& attrs = json::object()) {
        state = step(engine, state, tid, bound, attrs);
        if (trace)
            trace->push_back(state);
    };
    auto review = [](const std::string& who) { return json{{"Review", {{"reviewer", who}}}}; };
    auto score = [](const std::string& id, int s) { return json{{id, {{"score", s}}}}; };

    go("fa/s/out0", {}, {{"Conference", {{"name", "CAiSE-mini"}}}});
    go("fa/open_submission/in0/out0");
    go("fb/submit_paper/in0/out0", {},
       {{"AuthorTeam", {{"contact", "team-a@example.org"}}}, {"Paper", {{"title", "Fragments"}, {"studentPaper", false}}}});
    go("fb/submit_paper/in0/out0", {},
       {{"AuthorTeam", {{"contact", "team-b@example.org"}}}, {"Paper", {{"title", "Nets"}, {"studentPaper", true}}}});
    go("fb/send_submission_notification/in0/out0", {{"paper", "Paper#0"}});
    go("fb/send_submission_notification/in0/out0", {{"paper", "Paper#1"}});
    go("fa/close_submission/in0/out0");

    go("fc/assign_reviewer/in0/out0", {{"paper", "Paper#0"}}, review("ana"));
    go("fd/create_review/in0/out0", {{"review", "Review#0"}}, score("Review#0", 3));
    go("fe/decide_on_paper/in0/out0", {{"paper", "Paper#0"}}, review("dee"));
    go("fd/create_review/in0/out0", {{"review", "Review#1"}}, score("Review#1", 2));
    go("fe/decide_on_paper/in0/out1", {{"paper", "Paper#0"}}, {{"Decision", {{"comment", "accept"}}}});

    go("fc/assign_reviewer/in0/out0", {{"paper", "Paper#1"}}, review("bo"));
    go("fc/assign_reviewer/in0/out0", {{"paper", "Paper#1"}}, review("cy"));
    go("fd/create_review/in0/out0", {{"review", "Review#2"}}, score("Review#2", -1));
    go("fd/create_review/in0/out0", {{"review", "Review#3"}}, score("Review#3", -2));
    go("fe/decide_on_paper/in0/out2", {{"paper", "Paper#1"}}, {{"Decision", {{"comment", "reject"}}}});

    go("ff/send_notification/in0/out0", {{"paper", "Paper#0"}});
    go("ff/send_notification/in1/out0", {{"paper", "Paper#1"}});
    go("fa/close_reviewing/in0/out0");
    go("term/0");
    return state;
}

} // namespace fcm::testing
