#include "fcm/explorer.hpp"

#include "fcm/net_io.hpp"

#include <deque>
#include <map>
#include <unordered_map>

namespace fcm {

using nlohmann::json;
using namespace cpn;

namespace {

constexpr std::size_t kMaxReportedViolations = 100;

} // namespace

std::string_view to_string(InvariantKind kind)
{
    switch (kind) {
    case InvariantKind::AbstractState: return "AbstractState";
    case InvariantKind::SetTokens: return "SetTokens";
    case InvariantKind::TokenColor: return "TokenColor";
    case InvariantKind::CounterSoundness: return "CounterSoundness";
    case InvariantKind::AssociationsInObjects: return "AssociationsInObjects";
    case InvariantKind::ConfigurationUniqueness: return "ConfigurationUniqueness";
    case InvariantKind::UpperBound: return "UpperBound";
    }
    return "AbstractState";
}

std::vector<InvariantViolation> check_invariants(const Net& net, const Marking& m)
{
    std::vector<InvariantViolation> out;
    auto report = [&](InvariantKind kind, std::string message) { out.push_back({kind, std::move(message)}); };

    if (m.tokens.size() != net.places.size()) {
        report(InvariantKind::TokenColor, "marking has the wrong number of places");
        return out;
    }
    for (PlaceIndex p = 0; p < net.places.size(); ++p)
        for (const auto& v : m.tokens[p])
            if (colorset_of(v) != net.places[p].colorset)
                report(InvariantKind::TokenColor, "place " + net.places[p].id + " holds a token of colorset " +
                                                      std::string(to_string(colorset_of(v))));
    if (!out.empty())
        return out;

    auto units = m.tokens[net.initial].size() + m.tokens[net.running].size() + m.tokens[net.closed].size();
    if (units != 1)
        report(InvariantKind::AbstractState, std::to_string(units) + " tokens across i, r and o");

    bool active = !m.tokens[net.initial].empty() || !m.tokens[net.running].empty();
    auto objectsCount = m.tokens[net.objects].size();
    auto assocsCount = m.tokens[net.associations].size();
    if (active && (objectsCount != 1 || assocsCount != 1))
        report(InvariantKind::SetTokens, "objects/associations hold " + std::to_string(objectsCount) + "/" +
                                             std::to_string(assocsCount) + " tokens while the case is active");
    if (objectsCount != 1 || assocsCount != 1)
        return out;

    const auto& objects = std::get<IdSet>(m.tokens[net.objects].front());
    const auto& assocs = std::get<AssocSet>(m.tokens[net.associations].front());

    for (ClassIndex c = 0; c < net.classes.size(); ++c) {
        const auto& tokens = m.tokens[net.counters[c]];
        if (tokens.size() != 1) {
            report(InvariantKind::CounterSoundness,
                   "counter of " + net.classes[c] + " holds " + std::to_string(tokens.size()) + " tokens");
            continue;
        }
        auto counter = std::get<std::uint64_t>(tokens.front());
        std::uint64_t expected = 0;
        for (auto id : objects.items) {
            if (id.cls != c)
                continue;
            if (id.n != expected) {
                report(InvariantKind::CounterSoundness, "ids of " + net.classes[c] + " are not consecutive");
                break;
            }
            ++expected;
        }
        if (counter != expected)
            report(InvariantKind::CounterSoundness, "counter of " + net.classes[c] + " is " + std::to_string(counter) +
                                                        " but " + std::to_string(expected) + " objects exist");
    }

    for (const auto& p : assocs.pairs) {
        if (p.first == p.second)
            report(InvariantKind::AssociationsInObjects, "association of " + net.format(p.first) + " with itself");
        if (!objects.contains(p.first) || !objects.contains(p.second))
            report(InvariantKind::AssociationsInObjects,
                   "association {" + net.format(p.first) + ", " + net.format(p.second) + "} names an unknown object");
    }

    std::map<Id, int> seen;
    for (PlaceIndex p = 0; p < net.places.size(); ++p) {
        if (net.places[p].role != PlaceRole::Config)
            continue;
        for (const auto& v : m.tokens[p]) {
            auto id = std::get<Id>(v);
            if (id.cls != *net.places[p].cls)
                report(InvariantKind::ConfigurationUniqueness, net.format(id) + " sits on " + net.places[p].id);
            if (!objects.contains(id))
                report(InvariantKind::ConfigurationUniqueness, net.format(id) + " is not in the objects set");
            ++seen[id];
        }
    }
    for (const auto& [id, count] : seen)
        if (count > 1)
            report(InvariantKind::ConfigurationUniqueness,
                   net.format(id) + " appears on " + std::to_string(count) + " configuration places");
    if (!m.tokens[net.running].empty())
        for (auto id : objects.items)
            if (!seen.count(id))
                report(InvariantKind::ConfigurationUniqueness, net.format(id) + " is on no configuration place");

    for (auto id : objects.items) {
        for (ClassIndex c = 0; c < net.classes.size(); ++c) {
            if (c == id.cls)
                continue;
            auto count = assocs.partner_count(id, c);
            auto upper = net.cardinality[c][id.cls].upper;
            if (count > upper)
                report(InvariantKind::UpperBound, net.format(id) + " has " + std::to_string(count) + " " +
                                                      net.classes[c] + " partners, at most " + std::to_string(upper) +
                                                      " allowed");
        }
    }
    return out;
}

ExploreReport explore(const Net& net, ExploreLimits limits)
{
    struct Node
    {
        std::size_t parent;
        TransitionIndex transition;
        Binding binding;
        std::size_t depth;
    };

    ExploreReport report;
    std::vector<Marking> states;
    std::vector<Node> nodes;
    std::unordered_map<Marking, std::size_t, MarkingHash> index;

    auto add = [&](Marking m, Node node) {
        index.emplace(m, states.size());
        states.push_back(std::move(m));
        nodes.push_back(std::move(node));
    };
    if (limits.maxStates == 0)
        return report;
    add(initial_marking(net), {SIZE_MAX, 0, {}, 0});

    std::optional<std::size_t> terminal;
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        auto current = queue.front();
        queue.pop_front();
        auto depth = nodes[current].depth;
        report.maxDepth = std::max(report.maxDepth, depth);

        auto violations = check_invariants(net, states[current]);
        if (!violations.empty()) {
            ++report.violatingStates;
            for (auto& v : violations)
                if (report.violations.size() < kMaxReportedViolations)
                    report.violations.emplace_back(depth, std::move(v));
        }
        if (!terminal && !states[current].tokens[net.closed].empty())
            terminal = current;

        auto enabled = enabled_bindings(net, states[current]);
        if (enabled.empty())
            continue;
        if (depth >= limits.maxDepth) {
            report.truncated = true;
            continue;
        }
        for (auto& eb : enabled) {
            ++report.edges;
            auto next = fire(net, states[current], eb.transition, eb.binding);
            if (index.count(next))
                continue;
            if (states.size() >= limits.maxStates) {
                report.truncated = true;
                continue;
            }
            add(std::move(next), {current, eb.transition, std::move(eb.binding), depth + 1});
            queue.push_back(states.size() - 1);
        }
    }

    report.statesVisited = states.size();
    report.terminationReachable = terminal.has_value();
    if (terminal) {
        std::vector<WitnessStep> path;
        for (auto at = *terminal; nodes[at].parent != SIZE_MAX; at = nodes[at].parent) {
            const auto& t = net.transitions[nodes[at].transition];
            path.push_back({t.id, binding_to_json(net, t, nodes[at].binding)});
        }
        report.witness.assign(path.rbegin(), path.rend());
    }
    return report;
}

json to_json(const ExploreReport& report)
{
    json violations = json::array();
    for (const auto& [depth, v] : report.violations)
        violations.push_back({{"depth", depth}, {"kind", to_string(v.kind)}, {"message", v.message}});
    json witness = json::array();
    for (const auto& w : report.witness)
        witness.push_back({{"transitionId", w.transitionId}, {"binding", w.binding}});
    return {{"statesVisited", report.statesVisited},
            {"edges", report.edges},
            {"maxDepth", report.maxDepth},
            {"terminationReachable", report.terminationReachable},
            {"truncated", report.truncated},
            {"violatingStates", report.violatingStates},
            {"violations", violations},
            {"witness", witness}};
}

} // namespace fcm
