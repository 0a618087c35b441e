#pragma once

// Case execution on top of the net kernel. The marking is the behavioral
// state; object attributes live in a separate store and never influence
// which steps are enabled.

#include "fcm/compiler.hpp"
#include "fcm/cpn.hpp"
#include "fcm/model.hpp"

#include "json.hpp"

#include <map>
#include <string>
#include <vector>

namespace fcm {

enum class CaseStatus { Initial, Running, Terminated };

std::string_view to_string(CaseStatus status);

struct ObjectRecord
{
    cpn::Id id;
    /// Configuration place state holding the id, or "consumed".
    std::string currentState;
    /// Attribute name to a JSON string, integer or boolean.
    std::map<std::string, nlohmann::json> attributes;

    friend bool operator==(const ObjectRecord&, const ObjectRecord&) = default;
};

struct StepRecord
{
    std::string transitionId;
    nlohmann::json binding;
    nlohmann::json attributes;
    std::string timestamp;

    friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct CaseState
{
    std::string caseId;
    std::string modelHash;
    cpn::Marking marking;
    std::map<cpn::Id, ObjectRecord> objects;
    CaseStatus status = CaseStatus::Initial;
    std::vector<StepRecord> stepLog;

    friend bool operator==(const CaseState&, const CaseState&) = default;
};

/// Attributes a step may set. Created objects are keyed by class name and
/// must receive every required attribute; updated objects are keyed by "Class#n" and
/// may receive any subset.
struct FormSpec
{
    std::string key;
    std::string cls;
    bool created = false;
    std::vector<AttributeSpec> attributes;
};

struct StepOption
{
    std::string optionId;
    std::string transitionId;
    std::string label;
    cpn::TransitionIndex transition = 0;
    cpn::Binding binding;
    /// Object-valued variables other than the objects set, formatted
    /// ("paper" -> "Paper#0").
    std::vector<std::pair<std::string, std::string>> summary;
    std::vector<FormSpec> requiredForms;
};

nlohmann::json to_json(const StepOption& option);

class Engine
{
public:
    /// Compiles the model. Throws CompileError.
    explicit Engine(CaseModel model);

    const CaseModel& model() const noexcept { return _model; }
    const cpn::Net& net() const noexcept { return _compiled.net; }
    const CompileReport& report() const noexcept { return _compiled.report; }
    const std::string& model_hash() const noexcept { return _hash; }

    CaseState create_case() const;

    /// Throws CaseTerminated.
    std::vector<StepOption> enabled_steps(const CaseState& state) const;

    /// Throws CaseTerminated, StaleOption or SchemaError.
    CaseState apply_step(const CaseState& state, const std::string& optionId,
                         const nlohmann::json& attributes = nlohmann::json::object()) const;
    CaseState apply_step(const CaseState& state, const StepOption& option,
                         const nlohmann::json& attributes = nlohmann::json::object()) const;

    /// Indices of the termination conditions whose transition is enabled.
    std::vector<int> terminable(const CaseState& state) const;

    nlohmann::json snapshot(const CaseState& state) const;
    /// Throws VersionMismatch if the snapshot belongs to another model and
    /// ParseError if it is malformed.
    CaseState restore(const nlohmann::json& document) const;

    /// Re-executes a step log on a fresh case with the given id.
    CaseState replay(const std::string& caseId, const std::vector<StepRecord>& log) const;

    /// Status, objects and associations of a case.
    nlohmann::json describe(const CaseState& state) const;

    std::string option_id(cpn::TransitionIndex transition, const cpn::Binding& binding) const;

private:
    struct TransitionInfo
    {
        std::vector<std::pair<cpn::ClassIndex, cpn::VarIndex>> created; // class, counter variable
        std::vector<cpn::VarIndex> updated;
    };

    StepOption make_option(cpn::TransitionIndex transition, cpn::Binding binding) const;
    CaseState fire_step(const CaseState& state, cpn::TransitionIndex transition, const cpn::Binding& binding,
                        const nlohmann::json& attributes, std::string timestamp) const;
    void check_attributes(const StepOption& option, const nlohmann::json& attributes) const;
    void refresh_objects(CaseState& state) const;

    CaseModel _model;
    Compilation _compiled;
    std::string _hash;
    std::vector<TransitionInfo> _info;
};

CaseStatus status_of(const cpn::Net& net, const cpn::Marking& marking);

} // namespace fcm
