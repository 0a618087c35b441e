#pragma once

// Helpers for driving the engine through the conference walk-through.

#include "fcm/engine.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fcm::testing {

std::filesystem::path models_dir();
CaseModel load_fixture(const std::string& name);

/// The option of `transitionId` whose object summary contains `bound`
/// (variable name to formatted value).
std::optional<StepOption> find_option(const std::vector<StepOption>& options, const std::string& transitionId,
                                      const std::map<std::string, std::string>& bound = {});

/// Transition ids of the options, in order.
std::vector<std::string> transition_ids(const std::vector<StepOption>& options);

/// Executes the option or throws std::runtime_error naming what was missing.
CaseState step(const Engine& engine, const CaseState& state, const std::string& transitionId,
               const std::map<std::string, std::string>& bound = {},
               const nlohmann::json& attributes = nlohmann::json::object());

/// Schedule, open, two teams submit two papers, close submission, review,
/// decide (one additional review for the first paper), notify, close
/// reviewing, terminate. Every intermediate state is appended to `trace`
/// when given.
CaseState conference_walkthrough(const Engine& engine, std::vector<CaseState>* trace = nullptr);

} // namespace fcm::testing
