#pragma once

// Case models: domain model with cardinality constraints, object life cycles,
// process fragments and termination conditions.

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fcm {

enum class AttributeType { String, Integer, Boolean };

std::string_view to_string(AttributeType type);
std::optional<AttributeType> attribute_type_from_string(std::string_view text);

struct AttributeSpec
{
    std::string name;
    AttributeType type = AttributeType::String;
    /// Must be given when an object is created.
    bool required = true;

    friend bool operator==(const AttributeSpec&, const AttributeSpec&) = default;
};

/// Requires the owning object to be associated with at least `minCount`
/// objects of `dependentClass` when the guarded life-cycle transition fires.
struct GoalGuard
{
    std::string dependentClass;
    unsigned minCount = 0;

    friend auto operator<=>(const GoalGuard&, const GoalGuard&) = default;
};

struct OlcTransition
{
    std::string from;
    std::string to;
    std::vector<GoalGuard> guards;

    friend bool operator==(const OlcTransition&, const OlcTransition&) = default;
};

struct ObjectLifeCycle
{
    std::vector<std::string> states;
    std::vector<OlcTransition> transitions;

    bool has_state(std::string_view state) const;
    const OlcTransition* find_transition(std::string_view from, std::string_view to) const;
    OlcTransition* find_transition(std::string_view from, std::string_view to);

    /// States reachable from `state` via zero or more transitions.
    std::vector<std::string> reachable_from(std::string_view state) const;

    friend bool operator==(const ObjectLifeCycle&, const ObjectLifeCycle&) = default;
};

struct ClassDecl
{
    std::string name;
    bool isCaseClass = false;
    std::vector<AttributeSpec> attributes;
    ObjectLifeCycle olc;

    friend bool operator==(const ClassDecl&, const ClassDecl&) = default;
};

/// Bounds on how many objects of one class a single object of another class
/// is associated with.
struct Bounds
{
    unsigned lower = 0;
    unsigned goalLower = 0;
    unsigned upper = 0;

    friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// One association between two classes, in the form used by the model
/// document: `aPerB` bounds the number of A objects per B object.
struct Association
{
    std::string classA;
    std::string classB;
    Bounds aPerB;
    Bounds bPerA;

    friend bool operator==(const Association&, const Association&) = default;
};

/// Directed view of an association: every `target` object is associated with
/// between `bounds.lower` and `bounds.upper` objects of `source`, and with at
/// least `bounds.goalLower` when the case terminates.
struct CardinalityConstraint
{
    std::string source;
    std::string target;
    Bounds bounds;

    friend bool operator==(const CardinalityConstraint&, const CardinalityConstraint&) = default;
};

struct ObjectConfiguration
{
    std::string cls;
    std::string state;

    friend auto operator<=>(const ObjectConfiguration&, const ObjectConfiguration&) = default;
};

std::string to_string(const ObjectConfiguration& config);

struct IOEntry
{
    std::string cls;
    std::string state;
    bool collection = false;

    ObjectConfiguration configuration() const { return {cls, state}; }

    friend auto operator<=>(const IOEntry&, const IOEntry&) = default;
};

struct IOSet
{
    std::vector<IOEntry> entries;

    const IOEntry* find(std::string_view cls) const;
    bool empty() const noexcept { return entries.empty(); }

    friend bool operator==(const IOSet&, const IOSet&) = default;
};

enum class NodeKind { Activity, Gateway, StartEvent };

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> node_kind_from_string(std::string_view text);

struct Node
{
    std::string id;
    NodeKind kind = NodeKind::Activity;
    std::string label;

    friend bool operator==(const Node&, const Node&) = default;
};

using Flow = std::pair<std::string, std::string>;

struct Fragment
{
    std::string id;
    std::vector<Node> nodes;
    std::vector<Flow> flows;
    std::map<std::string, std::vector<IOSet>> inputSets;
    std::map<std::string, std::vector<IOSet>> outputSets;

    const Node* find_node(std::string_view id) const;
    std::vector<std::string> predecessors(std::string_view node) const;
    std::vector<std::string> successors(std::string_view node) const;
    const std::vector<IOSet>& inputs_of(std::string_view node) const;
    const std::vector<IOSet>& outputs_of(std::string_view node) const;

    friend bool operator==(const Fragment&, const Fragment&) = default;
};

struct DataCondition
{
    std::vector<ObjectConfiguration> configurations;

    friend bool operator==(const DataCondition&, const DataCondition&) = default;
};

struct CaseModel
{
    std::vector<ClassDecl> classes;
    std::vector<Association> associations;
    std::vector<Fragment> fragments;
    std::vector<DataCondition> terminationConditions;

    const ClassDecl* find_class(std::string_view name) const;
    ClassDecl* find_class(std::string_view name);
    /// Throws UnknownClass.
    const ClassDecl& class_named(std::string_view name) const;
    /// The first class flagged as case class, if any.
    const ClassDecl* case_class() const;

    /// Bounds on the number of `source` objects per `target` object. All
    /// zero when the classes are not associated.
    Bounds bounds(std::string_view source, std::string_view target) const;
    bool associated(std::string_view a, std::string_view b) const;

    std::vector<CardinalityConstraint> constraints() const;

    friend bool operator==(const CaseModel&, const CaseModel&) = default;
};

// How one input/output-set pair touches each class. Same class and state on
// both sides is a read, a different state an update, output-only a creation.
// A class read only as a collection is created by a singleton output entry.
enum class AccessKind { Read, Update, Create, ReadSet, UpdateSet };

struct DataAccess
{
    std::string cls;
    AccessKind kind = AccessKind::Read;
    std::string fromState; // empty for Create
    std::string toState;

    bool is_set() const noexcept { return kind == AccessKind::ReadSet || kind == AccessKind::UpdateSet; }
    bool changes_state() const noexcept { return kind == AccessKind::Update || kind == AccessKind::UpdateSet; }
};

struct AccessPlan
{
    std::vector<DataAccess> accesses;
    std::vector<std::string> problems;

    const DataAccess* find(std::string_view cls, bool set) const;
    std::vector<const DataAccess*> created() const;
};

AccessPlan classify_io(const IOSet& input, const IOSet& output);

/// Non-collection entries of `input` whose class is associated with
/// `collectionClass`; a well-formed input set has exactly one.
std::vector<const IOEntry*> reference_candidates(const CaseModel& model, const IOSet& input,
                                                 std::string_view collectionClass);

} // namespace fcm
