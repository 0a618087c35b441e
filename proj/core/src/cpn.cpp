#include "fcm/cpn.hpp"

#include "fcm/error.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace fcm::cpn {

namespace {

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t combine(std::size_t seed, std::size_t value)
{
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_id(Id id)
{
    return (static_cast<std::size_t>(id.cls) << 32) ^ id.n;
}

} // namespace

bool IdSet::contains(Id id) const
{
    return std::binary_search(items.begin(), items.end(), id);
}

bool AssocSet::contains(Assoc a) const
{
    return std::binary_search(pairs.begin(), pairs.end(), a);
}

std::vector<Id> AssocSet::partners(Id id, ClassIndex cls) const
{
    std::vector<Id> result;
    for (const auto& p : pairs) {
        if (p.first == id && p.second.cls == cls)
            result.push_back(p.second);
        else if (p.second == id && p.first.cls == cls)
            result.push_back(p.first);
    }
    std::sort(result.begin(), result.end());
    return result;
}

std::size_t AssocSet::partner_count(Id id, ClassIndex cls) const
{
    std::size_t count = 0;
    for (const auto& p : pairs)
        count += (p.first == id && p.second.cls == cls) || (p.second == id && p.first.cls == cls);
    return count;
}

ColorSet colorset_of(const ColorValue& value)
{
    return static_cast<ColorSet>(value.index());
}

std::string_view to_string(ColorSet colorset)
{
    switch (colorset) {
    case ColorSet::Unit: return "UNIT";
    case ColorSet::Int: return "INT";
    case ColorSet::Id: return "ID";
    case ColorSet::IdSet: return "Set<ID>";
    case ColorSet::AssocSet: return "Set<Association>";
    case ColorSet::CFMap: return "ControlFlow";
    }
    return "UNIT";
}

std::optional<ColorSet> colorset_from_string(std::string_view text)
{
    for (auto c : {ColorSet::Unit, ColorSet::Int, ColorSet::Id, ColorSet::IdSet, ColorSet::AssocSet, ColorSet::CFMap})
        if (to_string(c) == text)
            return c;
    return std::nullopt;
}

std::size_t hash_value(const ColorValue& value)
{
    std::size_t seed = value.index();
    std::visit(overloaded{
                   [&](const Unit&) {},
                   [&](std::uint64_t v) { seed = combine(seed, std::hash<std::uint64_t>{}(v)); },
                   [&](const Id& id) { seed = combine(seed, hash_id(id)); },
                   [&](const IdSet& s) {
                       for (auto id : s.items)
                           seed = combine(seed, hash_id(id));
                   },
                   [&](const AssocSet& s) {
                       for (const auto& p : s.pairs)
                           seed = combine(combine(seed, hash_id(p.first)), hash_id(p.second));
                   },
                   [&](const CFMap& m) {
                       for (const auto& slot : m.slots)
                           seed = combine(seed, slot ? hash_id(*slot) + 1 : 0);
                   },
               },
               value);
    return seed;
}

std::string_view to_string(PlaceRole role)
{
    switch (role) {
    case PlaceRole::Initial: return "initial";
    case PlaceRole::Running: return "running";
    case PlaceRole::Final: return "final";
    case PlaceRole::Objects: return "objects";
    case PlaceRole::Associations: return "associations";
    case PlaceRole::Counter: return "counter";
    case PlaceRole::Config: return "config";
    case PlaceRole::ControlFlow: return "controlFlow";
    }
    return "initial";
}

std::optional<PlaceRole> place_role_from_string(std::string_view text)
{
    for (auto r : {PlaceRole::Initial, PlaceRole::Running, PlaceRole::Final, PlaceRole::Objects,
                   PlaceRole::Associations, PlaceRole::Counter, PlaceRole::Config, PlaceRole::ControlFlow})
        if (to_string(r) == text)
            return r;
    return std::nullopt;
}

std::string_view to_string(OriginKind kind)
{
    switch (kind) {
    case OriginKind::StartEvent: return "startEvent";
    case OriginKind::Activity: return "activity";
    case OriginKind::Gateway: return "gateway";
    case OriginKind::Termination: return "termination";
    }
    return "activity";
}

std::optional<OriginKind> origin_kind_from_string(std::string_view text)
{
    for (auto k : {OriginKind::StartEvent, OriginKind::Activity, OriginKind::Gateway, OriginKind::Termination})
        if (to_string(k) == text)
            return k;
    return std::nullopt;
}

std::size_t Transition::binding_size() const
{
    return static_cast<std::size_t>(
        std::count_if(vars.begin(), vars.end(), [](const Variable& v) { return !v.fresh; }));
}

std::optional<VarIndex> Transition::var_named(std::string_view name) const
{
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i].name == name)
            return static_cast<VarIndex>(i);
    return std::nullopt;
}

void Marking::add(PlaceIndex place, ColorValue value)
{
    auto& list = tokens[place];
    list.insert(std::upper_bound(list.begin(), list.end(), value), std::move(value));
}

bool Marking::remove(PlaceIndex place, const ColorValue& value)
{
    auto& list = tokens[place];
    auto it = std::lower_bound(list.begin(), list.end(), value);
    if (it == list.end() || *it != value)
        return false;
    list.erase(it);
    return true;
}

std::size_t Marking::count(PlaceIndex place, const ColorValue& value) const
{
    const auto& list = tokens[place];
    auto [lo, hi] = std::equal_range(list.begin(), list.end(), value);
    return static_cast<std::size_t>(hi - lo);
}

std::size_t MarkingHash::operator()(const Marking& m) const noexcept
{
    std::size_t seed = m.tokens.size();
    for (const auto& list : m.tokens) {
        seed = combine(seed, list.size());
        for (const auto& v : list)
            seed = combine(seed, hash_value(v));
    }
    return seed;
}

// --- Net ------------------------------------------------------------------

namespace {

std::vector<VarIndex> arc_reads(const ArcPattern& arc)
{
    return std::visit(overloaded{
                          [](const CollectionBind& a) { return std::vector<VarIndex>{a.ref, a.assocs}; },
                          [](const auto&) { return std::vector<VarIndex>{}; },
                      },
                      arc);
}

std::vector<VarIndex> arc_binds(const ArcPattern& arc)
{
    return std::visit(overloaded{
                          [](const CollectionBind& a) { return std::vector<VarIndex>{a.set}; },
                          [](const auto& a) { return std::vector<VarIndex>{a.var}; },
                      },
                      arc);
}

PlaceIndex arc_place(const ArcPattern& arc)
{
    return std::visit([](const auto& a) { return a.place; }, arc);
}

std::vector<VarIndex> atom_vars(const GuardAtom& atom)
{
    return std::visit(overloaded{
                          [](const Associated& a) { return std::vector<VarIndex>{a.a, a.b, a.assocs}; },
                          [](const NotExceedsUpper& a) { return std::vector<VarIndex>{a.subject, a.assocs}; },
                          [](const MeetsLower& a) { return std::vector<VarIndex>{a.subject}; },
                          [](const GoalCount& a) { return std::vector<VarIndex>{a.subject, a.assocs}; },
                          [](const CFConsistent& a) { return std::vector<VarIndex>{a.cf, a.var}; },
                          [](const AllAssociatedInState& a) { return std::vector<VarIndex>{a.ref, a.set, a.assocs}; },
                          [](const SetSizeAtLeast& a) { return std::vector<VarIndex>{a.set}; },
                          [](const SetSizeAtMost& a) { return std::vector<VarIndex>{a.set}; },
                      },
                      atom);
}

std::vector<VarIndex> output_reads(const OutputEffect& effect)
{
    return std::visit(overloaded{
                          [](const EmitToken& e) {
                              return e.var ? std::vector<VarIndex>{*e.var} : std::vector<VarIndex>{};
                          },
                          [](const FreshId& e) {
                              auto v = e.associateWith;
                              v.push_back(e.counter);
                              return v;
                          },
                          [](const CounterPut& e) { return std::vector<VarIndex>{e.counter}; },
                          [](const SetPut& e) { return std::vector<VarIndex>{e.var}; },
                          [](const EmitCF& e) {
                              std::vector<VarIndex> v;
                              if (e.base)
                                  v.push_back(*e.base);
                              for (const auto& [_, var] : e.updates)
                                  v.push_back(var);
                              return v;
                          },
                      },
                      effect);
}

} // namespace

void Net::index()
{
    _placeIds.clear();
    _transitionIds.clear();
    counters.assign(classes.size(), 0);

    if (!std::is_sorted(classes.begin(), classes.end()))
        throw Error("net classes must be sorted by name");
    if (cardinality.size() != classes.size())
        throw Error("cardinality table does not match the class list");
    for (const auto& row : cardinality)
        if (row.size() != classes.size())
            throw Error("cardinality table does not match the class list");

    std::vector<int> roleCount(8, 0);
    std::vector<int> counterCount(classes.size(), 0);
    for (PlaceIndex p = 0; p < places.size(); ++p) {
        const auto& place = places[p];
        if (!_placeIds.emplace(place.id, p).second)
            throw Error("duplicate place id '" + place.id + "'");
        ++roleCount[static_cast<int>(place.role)];
        if ((place.role == PlaceRole::Counter || place.role == PlaceRole::Config) &&
            (!place.cls || *place.cls >= classes.size()))
            throw Error("place '" + place.id + "' needs a valid class");
        switch (place.role) {
        case PlaceRole::Initial: initial = p; break;
        case PlaceRole::Running: running = p; break;
        case PlaceRole::Final: closed = p; break;
        case PlaceRole::Objects: objects = p; break;
        case PlaceRole::Associations: associations = p; break;
        case PlaceRole::Counter:
            counters[*place.cls] = p;
            ++counterCount[*place.cls];
            break;
        default: break;
        }
    }
    for (auto role : {PlaceRole::Initial, PlaceRole::Running, PlaceRole::Final, PlaceRole::Objects,
                      PlaceRole::Associations})
        if (roleCount[static_cast<int>(role)] != 1)
            throw Error("net needs exactly one place with role " + std::string(to_string(role)));
    for (std::size_t c = 0; c < classes.size(); ++c)
        if (counterCount[c] != 1)
            throw Error("net needs exactly one counter place for class " + classes[c]);

    std::sort(transitions.begin(), transitions.end(),
              [](const Transition& a, const Transition& b) { return a.id < b.id; });

    for (TransitionIndex t = 0; t < transitions.size(); ++t) {
        auto& tr = transitions[t];
        if (!_transitionIds.emplace(tr.id, t).second)
            throw Error("duplicate transition id '" + tr.id + "'");

        auto fail = [&](const std::string& what) { throw Error("transition '" + tr.id + "': " + what); };

        bool seenFresh = false;
        for (const auto& v : tr.vars) {
            if (seenFresh && !v.fresh)
                fail("fresh variables must come last");
            seenFresh = seenFresh || v.fresh;
        }
        auto checkVar = [&](VarIndex v) {
            if (v >= tr.vars.size())
                fail("variable index out of range");
        };

        std::vector<bool> bound(tr.vars.size(), false);
        std::vector<int> boundAt(tr.vars.size(), -1);
        for (std::size_t a = 0; a < tr.arcs.size(); ++a) {
            if (arc_place(tr.arcs[a]) >= places.size())
                fail("arc place out of range");
            for (auto v : arc_reads(tr.arcs[a])) {
                checkVar(v);
                if (!bound[v])
                    fail("collection arc uses '" + tr.vars[v].name + "' before it is bound");
            }
            for (auto v : arc_binds(tr.arcs[a])) {
                checkVar(v);
                if (bound[v] || tr.vars[v].fresh)
                    fail("variable '" + tr.vars[v].name + "' must be bound by exactly one input arc");
                bound[v] = true;
                boundAt[v] = static_cast<int>(a);
            }
        }
        for (VarIndex v = 0; v < tr.vars.size(); ++v)
            if (!tr.vars[v].fresh && !bound[v])
                fail("variable '" + tr.vars[v].name + "' is not bound by any input arc");

        tr.atomsAfterArc.assign(std::max<std::size_t>(tr.arcs.size(), 1), {});
        for (std::size_t g = 0; g < tr.guard.size(); ++g) {
            int last = 0;
            for (auto v : atom_vars(tr.guard[g])) {
                checkVar(v);
                if (!bound[v])
                    fail("guard uses unbound variable '" + tr.vars[v].name + "'");
                last = std::max(last, boundAt[v]);
            }
            tr.atomsAfterArc[static_cast<std::size_t>(last)].push_back(g);
        }

        std::vector<bool> available = bound;
        for (const auto& out : tr.outputs) {
            for (auto v : output_reads(out)) {
                checkVar(v);
                if (!available[v])
                    fail("output uses unbound variable '" + tr.vars[v].name + "'");
            }
            if (const auto* f = std::get_if<FreshId>(&out)) {
                checkVar(f->out);
                if (!tr.vars[f->out].fresh)
                    fail("fresh id output must bind a fresh variable");
                available[f->out] = true;
            }
            std::visit([&](const auto& e) {
                if (e.place >= places.size())
                    fail("output place out of range");
            }, out);
        }
    }
}

std::optional<ClassIndex> Net::class_index(std::string_view name) const
{
    auto it = std::lower_bound(classes.begin(), classes.end(), name);
    if (it == classes.end() || *it != name)
        return std::nullopt;
    return static_cast<ClassIndex>(it - classes.begin());
}

std::optional<PlaceIndex> Net::place_index(std::string_view id) const
{
    auto it = _placeIds.find(std::string(id));
    if (it == _placeIds.end())
        return std::nullopt;
    return it->second;
}

std::optional<TransitionIndex> Net::transition_index(std::string_view id) const
{
    auto it = _transitionIds.find(std::string(id));
    if (it == _transitionIds.end())
        return std::nullopt;
    return it->second;
}

std::optional<PlaceIndex> Net::config_place(ClassIndex cls, std::string_view state) const
{
    for (PlaceIndex p = 0; p < places.size(); ++p)
        if (places[p].role == PlaceRole::Config && places[p].cls == cls && places[p].state == state)
            return p;
    return std::nullopt;
}

std::string Net::format(Id id) const
{
    return classes.at(id.cls) + "#" + std::to_string(id.n);
}

std::string Net::format(const ColorValue& value) const
{
    return std::visit(overloaded{
                          [](const Unit&) { return std::string("()"); },
                          [](std::uint64_t v) { return std::to_string(v); },
                          [&](const Id& id) { return format(id); },
                          [&](const IdSet& s) {
                              std::string out = "{";
                              for (std::size_t i = 0; i < s.items.size(); ++i)
                                  out += (i ? ", " : "") + format(s.items[i]);
                              return out + "}";
                          },
                          [&](const AssocSet& s) {
                              std::string out = "{";
                              for (std::size_t i = 0; i < s.pairs.size(); ++i)
                                  out += (i ? ", " : "") + std::string("{") + format(s.pairs[i].first) + ", " +
                                         format(s.pairs[i].second) + "}";
                              return out + "}";
                          },
                          [&](const CFMap& m) {
                              std::string out = "[";
                              for (std::size_t c = 0; c < m.slots.size(); ++c)
                                  out += (c ? ", " : "") + classes.at(c) + ":" +
                                         (m.slots[c] ? format(*m.slots[c]) : std::string("NULL"));
                              return out + "]";
                          },
                      },
                      value);
}

// --- Semantics ---------------------------------------------------------------

Marking initial_marking(const Net& net)
{
    Marking m;
    m.tokens.resize(net.places.size());
    m.add(net.initial, Unit{});
    for (auto p : net.counters)
        m.add(p, std::uint64_t{0});
    m.add(net.objects, IdSet{});
    m.add(net.associations, AssocSet{});
    return m;
}

namespace {

using Env = std::vector<ColorValue>;

/// Elements named by a variable: the id itself or the members of a set.
std::vector<Id> elements(const ColorValue& value)
{
    if (const auto* id = std::get_if<Id>(&value))
        return {*id};
    if (const auto* set = std::get_if<IdSet>(&value))
        return set->items;
    return {};
}

std::size_t size_of(const ColorValue& value)
{
    if (std::holds_alternative<Id>(value))
        return 1;
    if (const auto* set = std::get_if<IdSet>(&value))
        return set->items.size();
    return 0;
}

const AssocSet& assocs_of(const Env& env, VarIndex v)
{
    return std::get<AssocSet>(env[v]);
}

bool atom_holds(const GuardAtom& atom, const Env& env)
{
    return std::visit(
        overloaded{
            [&](const Associated& a) {
                return assocs_of(env, a.assocs).contains(Assoc::of(std::get<Id>(env[a.a]), std::get<Id>(env[a.b])));
            },
            [&](const NotExceedsUpper& a) {
                const auto& assocs = assocs_of(env, a.assocs);
                for (auto x : elements(env[a.subject]))
                    if (assocs.partner_count(x, a.partner) + a.added > a.bound)
                        return false;
                return true;
            },
            [&](const MeetsLower& a) { return size_of(env[a.subject]) >= a.bound; },
            [&](const GoalCount& a) {
                const auto& assocs = assocs_of(env, a.assocs);
                for (auto x : elements(env[a.subject])) {
                    if (a.subjectClass && x.cls != *a.subjectClass)
                        continue;
                    if (assocs.partner_count(x, a.dependent) + a.added < a.minCount)
                        return false;
                }
                return true;
            },
            [&](const CFConsistent& a) {
                const auto& slot = std::get<CFMap>(env[a.cf]).slots.at(a.cls);
                return !slot || *slot == std::get<Id>(env[a.var]);
            },
            [&](const AllAssociatedInState& a) {
                auto all = assocs_of(env, a.assocs).partners(std::get<Id>(env[a.ref]), a.cls);
                return all == std::get<IdSet>(env[a.set]).items;
            },
            [&](const SetSizeAtLeast& a) { return std::get<IdSet>(env[a.set]).items.size() >= a.n; },
            [&](const SetSizeAtMost& a) { return std::get<IdSet>(env[a.set]).items.size() <= a.n; },
        },
        atom);
}

/// Ids of `cls` on `place` associated with `ref`, limited to tokens not yet
/// claimed by earlier arcs.
IdSet collect(const Marking& m, const CollectionBind& arc, const Env& env,
              const std::vector<std::pair<PlaceIndex, ColorValue>>& claimed)
{
    IdSet result;
    auto candidates = assocs_of(env, arc.assocs).partners(std::get<Id>(env[arc.ref]), arc.cls);
    for (auto id : candidates) {
        ColorValue v = id;
        std::size_t used = std::count(claimed.begin(), claimed.end(), std::pair<PlaceIndex, ColorValue>{arc.place, v});
        if (m.count(arc.place, v) > used)
            result.items.push_back(id);
    }
    return result;
}

class BindingSearch
{
public:
    BindingSearch(const Transition& t, const Marking& m) : _t(t), _m(m), _env(t.vars.size()) {}

    std::vector<Binding> run()
    {
        if (_t.arcs.empty()) {
            if (check_atoms(0))
                _results.push_back({});
        } else {
            step(0);
        }
        std::sort(_results.begin(), _results.end());
        _results.erase(std::unique(_results.begin(), _results.end()), _results.end());
        return std::move(_results);
    }

private:
    bool check_atoms(std::size_t arc) const
    {
        for (auto g : _t.atomsAfterArc[arc])
            if (!atom_holds(_t.guard[g], _env))
                return false;
        return true;
    }

    void bind_and_continue(std::size_t arc, VarIndex var, const ColorValue& value, bool consume, PlaceIndex place)
    {
        _env[var] = value;
        if (consume)
            _claimed.emplace_back(place, value);
        if (check_atoms(arc))
            step(arc + 1);
        if (consume)
            _claimed.pop_back();
    }

    void step(std::size_t arc)
    {
        if (arc == _t.arcs.size()) {
            _results.emplace_back(_env.begin(), _env.begin() + static_cast<std::ptrdiff_t>(_t.binding_size()));
            return;
        }
        std::visit(overloaded{
                       [&](const CollectionBind& a) {
                           IdSet set = collect(_m, a, _env, _claimed);
                           _env[a.set] = set;
                           auto mark = _claimed.size();
                           for (auto id : set.items)
                               _claimed.emplace_back(a.place, id);
                           if (check_atoms(arc))
                               step(arc + 1);
                           _claimed.resize(mark);
                       },
                       [&](const TestToken& a) { each_token(arc, a.place, a.var, false); },
                       [&](const auto& a) { each_token(arc, a.place, a.var, true); },
                   },
                   _t.arcs[arc]);
    }

    void each_token(std::size_t arc, PlaceIndex place, VarIndex var, bool consume)
    {
        const auto& list = _m.tokens[place];
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (i > 0 && list[i] == list[i - 1])
                continue;
            const auto& value = list[i];
            std::size_t used =
                std::count(_claimed.begin(), _claimed.end(), std::pair<PlaceIndex, ColorValue>{place, value});
            if (_m.count(place, value) <= used)
                continue;
            bind_and_continue(arc, var, value, consume, place);
        }
    }

    const Transition& _t;
    const Marking& _m;
    Env _env;
    std::vector<std::pair<PlaceIndex, ColorValue>> _claimed;
    std::vector<Binding> _results;
};

} // namespace

std::vector<Binding> enabled_bindings(const Net& net, const Marking& marking, TransitionIndex transition)
{
    return BindingSearch(net.transitions.at(transition), marking).run();
}

std::vector<EnabledBinding> enabled_bindings(const Net& net, const Marking& marking)
{
    std::vector<EnabledBinding> result;
    for (TransitionIndex t = 0; t < net.transitions.size(); ++t)
        for (auto& b : enabled_bindings(net, marking, t))
            result.push_back({t, std::move(b)});
    return result;
}

bool guard_holds(const Net&, const Transition& transition, const Binding& binding)
{
    Env env(transition.vars.size());
    std::copy(binding.begin(), binding.end(), env.begin());
    for (const auto& atom : transition.guard)
        if (!atom_holds(atom, env))
            return false;
    return true;
}

bool is_enabled(const Net& net, const Marking& marking, TransitionIndex transition, const Binding& binding)
{
    const auto& t = net.transitions.at(transition);
    if (binding.size() != t.binding_size())
        return false;
    for (std::size_t v = 0; v < binding.size(); ++v)
        if (colorset_of(binding[v]) != t.vars[v].colorset)
            return false;

    Env env(t.vars.size());
    std::copy(binding.begin(), binding.end(), env.begin());
    std::vector<std::pair<PlaceIndex, ColorValue>> claimed;
    auto available = [&](PlaceIndex place, const ColorValue& value) {
        auto used = std::count(claimed.begin(), claimed.end(), std::pair<PlaceIndex, ColorValue>{place, value});
        return marking.count(place, value) > static_cast<std::size_t>(used);
    };
    for (const auto& arc : t.arcs) {
        bool ok = std::visit(overloaded{
                                 [&](const CollectionBind& a) {
                                     if (collect(marking, a, env, claimed) != std::get<IdSet>(env[a.set]))
                                         return false;
                                     for (auto id : std::get<IdSet>(env[a.set]).items)
                                         claimed.emplace_back(a.place, id);
                                     return true;
                                 },
                                 [&](const TestToken& a) { return available(a.place, env[a.var]); },
                                 [&](const auto& a) {
                                     if (!available(a.place, env[a.var]))
                                         return false;
                                     claimed.emplace_back(a.place, env[a.var]);
                                     return true;
                                 },
                             },
                             arc);
        if (!ok)
            return false;
    }
    return guard_holds(net, t, binding);
}

Marking fire(const Net& net, const Marking& marking, TransitionIndex transition, const Binding& binding)
{
    const auto& t = net.transitions.at(transition);
    if (!is_enabled(net, marking, transition, binding))
        throw NotEnabled("transition '" + t.id + "' is not enabled under the given binding");

    Marking next = marking;
    Env env(t.vars.size());
    std::copy(binding.begin(), binding.end(), env.begin());

    for (const auto& arc : t.arcs) {
        std::visit(overloaded{
                       [&](const CollectionBind& a) {
                           for (auto id : std::get<IdSet>(env[a.set]).items)
                               next.remove(a.place, id);
                       },
                       [&](const TestToken&) {},
                       [&](const auto& a) { next.remove(a.place, env[a.var]); },
                   },
                   arc);
    }

    std::vector<Id> freshIds;
    std::vector<Assoc> newPairs;
    for (const auto& out : t.outputs) {
        const auto* f = std::get_if<FreshId>(&out);
        if (!f)
            continue;
        Id id{f->cls, static_cast<std::uint32_t>(std::get<std::uint64_t>(env[f->counter]))};
        env[f->out] = id;
        freshIds.push_back(id);
        for (auto w : f->associateWith)
            for (auto partner : elements(env[w]))
                if (partner != id)
                    newPairs.push_back(Assoc::of(id, partner));
    }

    for (const auto& out : t.outputs) {
        std::visit(overloaded{
                       [&](const EmitToken& e) {
                           if (!e.var) {
                               next.add(e.place, Unit{});
                               return;
                           }
                           const auto& value = env[*e.var];
                           if (net.places[e.place].colorset == ColorSet::Id && std::holds_alternative<IdSet>(value)) {
                               for (auto id : std::get<IdSet>(value).items)
                                   next.add(e.place, id);
                           } else {
                               next.add(e.place, value);
                           }
                       },
                       [&](const FreshId& e) { next.add(e.place, env[e.out]); },
                       [&](const CounterPut& e) { next.add(e.place, std::get<std::uint64_t>(env[e.counter]) + 1); },
                       [&](const SetPut& e) {
                           if (auto* ids = std::get_if<IdSet>(&env[e.var])) {
                               IdSet updated = *ids;
                               updated.items.insert(updated.items.end(), freshIds.begin(), freshIds.end());
                               std::sort(updated.items.begin(), updated.items.end());
                               updated.items.erase(std::unique(updated.items.begin(), updated.items.end()),
                                                   updated.items.end());
                               next.add(e.place, std::move(updated));
                           } else {
                               AssocSet updated = std::get<AssocSet>(env[e.var]);
                               updated.pairs.insert(updated.pairs.end(), newPairs.begin(), newPairs.end());
                               std::sort(updated.pairs.begin(), updated.pairs.end());
                               updated.pairs.erase(std::unique(updated.pairs.begin(), updated.pairs.end()),
                                                   updated.pairs.end());
                               next.add(e.place, std::move(updated));
                           }
                       },
                       [&](const EmitCF& e) {
                           CFMap map = e.base ? std::get<CFMap>(env[*e.base]) : CFMap{};
                           map.slots.resize(net.classes.size());
                           for (const auto& [cls, var] : e.updates)
                               map.slots[cls] = std::get<Id>(env[var]);
                           next.add(e.place, std::move(map));
                       },
                   },
                   out);
    }
    return next;
}

} // namespace fcm::cpn
