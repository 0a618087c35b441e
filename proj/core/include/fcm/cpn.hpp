#pragma once

// A restricted colored Petri net kernel. Tokens are drawn from six colorsets
// (unit, integer, object id, set of ids, set of associations, control-flow
// map); guards are conjunctions of a fixed vocabulary of atoms over the
// variables bound by input arcs.

#include "fcm/model.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace fcm::cpn {

using ClassIndex = std::uint16_t;
using PlaceIndex = std::uint32_t;
using VarIndex = std::uint32_t;
using TransitionIndex = std::uint32_t;

struct Unit
{
    friend auto operator<=>(const Unit&, const Unit&) = default;
};

struct Id
{
    ClassIndex cls = 0;
    std::uint32_t n = 0;

    friend auto operator<=>(const Id&, const Id&) = default;
};

/// Sorted, duplicate free.
struct IdSet
{
    std::vector<Id> items;

    bool contains(Id id) const;
    friend auto operator<=>(const IdSet&, const IdSet&) = default;
};

/// Unordered pair stored with `first < second`.
struct Assoc
{
    Id first;
    Id second;

    static Assoc of(Id a, Id b) { return a < b ? Assoc{a, b} : Assoc{b, a}; }
    friend auto operator<=>(const Assoc&, const Assoc&) = default;
};

/// Sorted, duplicate free.
struct AssocSet
{
    std::vector<Assoc> pairs;

    bool contains(Assoc a) const;
    /// Objects of class `cls` associated with `id`, sorted.
    std::vector<Id> partners(Id id, ClassIndex cls) const;
    std::size_t partner_count(Id id, ClassIndex cls) const;
    friend auto operator<=>(const AssocSet&, const AssocSet&) = default;
};

/// One slot per class of the net; an empty slot is NULL.
struct CFMap
{
    std::vector<std::optional<Id>> slots;

    friend auto operator<=>(const CFMap&, const CFMap&) = default;
};

using ColorValue = std::variant<Unit, std::uint64_t, Id, IdSet, AssocSet, CFMap>;

enum class ColorSet : std::uint8_t { Unit, Int, Id, IdSet, AssocSet, CFMap };

ColorSet colorset_of(const ColorValue& value);
std::string_view to_string(ColorSet colorset);
std::optional<ColorSet> colorset_from_string(std::string_view text);

std::size_t hash_value(const ColorValue& value);

enum class PlaceRole : std::uint8_t { Initial, Running, Final, Objects, Associations, Counter, Config, ControlFlow };

std::string_view to_string(PlaceRole role);
std::optional<PlaceRole> place_role_from_string(std::string_view text);

struct Place
{
    std::string id;
    ColorSet colorset = ColorSet::Unit;
    PlaceRole role = PlaceRole::Initial;
    std::optional<ClassIndex> cls; // counter and config places
    std::string state;             // config places
    std::string fragment;          // control-flow places
    Flow flow;                     // control-flow places
};

struct Variable
{
    std::string name;
    ColorSet colorset = ColorSet::Unit;
    /// Bound on firing by a FreshId output rather than by an input arc.
    bool fresh = false;
};

// Input arc patterns.
struct SingleToken
{
    PlaceIndex place;
    VarIndex var;
};
/// Consume-and-reproduce: the token must be present but is not removed.
struct TestToken
{
    PlaceIndex place;
    VarIndex var;
};
struct CounterTake
{
    PlaceIndex place;
    VarIndex var;
};
struct SetTake
{
    PlaceIndex place;
    VarIndex var;
};
/// Binds `set` to the objects of `cls` on `place` that are associated with
/// the object bound to `ref`, and consumes them.
struct CollectionBind
{
    PlaceIndex place;
    VarIndex set;
    VarIndex ref;
    ClassIndex cls;
    VarIndex assocs;
};

using ArcPattern = std::variant<SingleToken, TestToken, CounterTake, SetTake, CollectionBind>;

// Guard atoms. Subjects bound to an IdSet are checked element-wise.
struct Associated
{
    VarIndex a;
    VarIndex b;
    VarIndex assocs;
};
/// partners(subject, partner) + added <= bound
struct NotExceedsUpper
{
    VarIndex subject;
    ClassIndex partner;
    unsigned bound;
    unsigned added;
    VarIndex assocs;
};
/// Number of objects bound to `subject` (1 for an id) >= bound.
struct MeetsLower
{
    VarIndex subject;
    unsigned bound;
};
/// partners(subject, dependent) + added >= minCount. With `subjectClass`
/// set, only elements of that class are checked.
struct GoalCount
{
    VarIndex subject;
    std::optional<ClassIndex> subjectClass;
    ClassIndex dependent;
    unsigned minCount;
    unsigned added;
    VarIndex assocs;
};
/// The control-flow slot for `cls` is NULL or equals `var`.
struct CFConsistent
{
    VarIndex cf;
    ClassIndex cls;
    VarIndex var;
};
/// `set` holds every object of `cls` associated with `ref`; `place` is the
/// configuration they must all occupy.
struct AllAssociatedInState
{
    VarIndex ref;
    ClassIndex cls;
    PlaceIndex place;
    VarIndex set;
    VarIndex assocs;
};
struct SetSizeAtLeast
{
    VarIndex set;
    unsigned n;
};
struct SetSizeAtMost
{
    VarIndex set;
    unsigned n;
};

using GuardAtom = std::variant<Associated, NotExceedsUpper, MeetsLower, GoalCount, CFConsistent, AllAssociatedInState,
                               SetSizeAtLeast, SetSizeAtMost>;

// Output effects, applied in order.
/// Emits the value of `var` (spread element-wise when an IdSet goes to an id
/// place) or a unit token when `var` is empty.
struct EmitToken
{
    PlaceIndex place;
    std::optional<VarIndex> var;
};
/// Creates Id(cls, counter) on `place`, binds it to `out`, and associates it
/// with every object bound to `associateWith`.
struct FreshId
{
    ClassIndex cls;
    VarIndex counter;
    VarIndex out;
    PlaceIndex place;
    std::vector<VarIndex> associateWith;
};
/// Puts counter + 1.
struct CounterPut
{
    PlaceIndex place;
    VarIndex counter;
};
/// Puts the bound set extended by this firing's new objects (objects place)
/// or new associations (associations place).
struct SetPut
{
    PlaceIndex place;
    VarIndex var;
};
/// Puts the control-flow map bound to `base` (all NULL when absent) with
/// the listed slots overwritten.
struct EmitCF
{
    PlaceIndex place;
    std::optional<VarIndex> base;
    std::vector<std::pair<ClassIndex, VarIndex>> updates;
};

using OutputEffect = std::variant<EmitToken, FreshId, CounterPut, SetPut, EmitCF>;

enum class OriginKind : std::uint8_t { StartEvent, Activity, Gateway, Termination };

std::string_view to_string(OriginKind kind);
std::optional<OriginKind> origin_kind_from_string(std::string_view text);

struct Origin
{
    OriginKind kind = OriginKind::Activity;
    std::string fragment;
    std::string node;
    int inputSet = -1;
    int outputSet = -1;
    std::string from; // gateway: predecessor node
    std::string to;   // gateway: successor node
    int termination = -1;
};

struct Transition
{
    std::string id;
    std::string label;
    Origin origin;
    /// Input variables first, fresh variables last.
    std::vector<Variable> vars;
    std::vector<ArcPattern> arcs;
    std::vector<GuardAtom> guard;
    std::vector<OutputEffect> outputs;

    std::size_t binding_size() const;
    std::optional<VarIndex> var_named(std::string_view name) const;

    /// Guard atoms that become decidable once arcs [0, k] are bound. Filled in
    /// by Net::index().
    std::vector<std::vector<std::size_t>> atomsAfterArc;
};

/// A binding assigns a value to each input variable of a transition.
using Binding = std::vector<ColorValue>;

/// Token multisets per place, each kept sorted.
struct Marking
{
    std::vector<std::vector<ColorValue>> tokens;

    void add(PlaceIndex place, ColorValue value);
    /// Removes one occurrence; false if absent.
    bool remove(PlaceIndex place, const ColorValue& value);
    std::size_t count(PlaceIndex place, const ColorValue& value) const;

    friend bool operator==(const Marking&, const Marking&) = default;
    friend auto operator<=>(const Marking&, const Marking&) = default;
};

struct MarkingHash
{
    std::size_t operator()(const Marking& m) const noexcept;
};

struct Net
{
    /// Sorted by name, so Id order equals (class name, index) order.
    std::vector<std::string> classes;
    /// cardinality[source][target]: bounds on source objects per target object.
    std::vector<std::vector<Bounds>> cardinality;
    std::vector<Place> places;
    /// Sorted by id.
    std::vector<Transition> transitions;

    // Derived by index().
    PlaceIndex initial = 0;
    PlaceIndex running = 0;
    PlaceIndex closed = 0;
    PlaceIndex objects = 0;
    PlaceIndex associations = 0;
    std::vector<PlaceIndex> counters;

    /// Validates structure (exactly one global place per role, variables
    /// bound before use, fresh variables last) and fills derived fields.
    /// Throws fcm::Error.
    void index();

    std::optional<ClassIndex> class_index(std::string_view name) const;
    std::optional<PlaceIndex> place_index(std::string_view id) const;
    std::optional<TransitionIndex> transition_index(std::string_view id) const;
    std::optional<PlaceIndex> config_place(ClassIndex cls, std::string_view state) const;

    std::string format(Id id) const;
    std::string format(const ColorValue& value) const;

private:
    std::unordered_map<std::string, PlaceIndex> _placeIds;
    std::unordered_map<std::string, TransitionIndex> _transitionIds;
};

struct EnabledBinding
{
    TransitionIndex transition;
    Binding binding;

    friend bool operator==(const EnabledBinding&, const EnabledBinding&) = default;
};

Marking initial_marking(const Net& net);

/// All enabled (transition, binding) pairs, ordered by transition id and then
/// lexicographically by binding.
std::vector<EnabledBinding> enabled_bindings(const Net& net, const Marking& marking);
std::vector<Binding> enabled_bindings(const Net& net, const Marking& marking, TransitionIndex transition);

bool guard_holds(const Net& net, const Transition& transition, const Binding& binding);
bool is_enabled(const Net& net, const Marking& marking, TransitionIndex transition, const Binding& binding);

/// Throws NotEnabled if the binding is not enabled in `marking`.
Marking fire(const Net& net, const Marking& marking, TransitionIndex transition, const Binding& binding);

} // namespace fcm::cpn
