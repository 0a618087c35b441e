#include "random_model.hpp"

#include "fcm/validate.hpp"

#include <stdexcept>

namespace fcm::testing {

namespace {

int pick(std::mt19937& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool coin(std::mt19937& rng)
{
    return pick(rng, 0, 1) == 1;
}

std::string state(int k)
{
    return "s" + std::to_string(k);
}

IOEntry entry(const std::string& cls, int k, bool collection = false)
{
    return {cls, state(k), collection};
}

} // namespace

CaseModel random_model_candidate(std::mt19937& rng)
{
    CaseModel m;
    int classCount = pick(rng, 1, 3);
    std::vector<int> stateCount;
    for (int c = 0; c < classCount; ++c) {
        ClassDecl decl;
        decl.name = "K" + std::to_string(c);
        decl.isCaseClass = c == 0;
        int states = pick(rng, 1, 3);
        stateCount.push_back(states);
        for (int q = 0; q < states; ++q)
            decl.olc.states.push_back(state(q));
        for (int q = 0; q + 1 < states; ++q)
            decl.olc.transitions.push_back({state(q), state(q + 1), {}});
        if (coin(rng))
            decl.attributes.push_back({"note", AttributeType::String});
        m.classes.push_back(decl);
    }

    // parent[c] is the class every c object belongs to.
    std::vector<int> parent(classCount, -1);
    for (int c = 1; c < classCount; ++c) {
        parent[c] = c == 1 ? 0 : pick(rng, 0, 1);
        auto upper = static_cast<unsigned>(pick(rng, 1, 2));
        auto goal = static_cast<unsigned>(pick(rng, 0, 1));
        m.associations.push_back({m.classes[parent[c]].name, m.classes[c].name, {1, 1, 1}, {0, goal, upper}});
    }
    auto name = [&](int c) { return m.classes[c].name; };

    // Case fragment: start event and a chain of activities on the case object.
    Fragment f0;
    f0.id = "f0";
    f0.nodes.push_back({"start", NodeKind::StartEvent, "start"});
    f0.outputSets["start"] = {IOSet{{entry(name(0), 0)}}};
    int current = 0;
    std::string previous = "start";
    int activities = pick(rng, 1, 3);
    for (int k = 0; k < activities; ++k) {
        std::string id = "a" + std::to_string(k);
        IOSet in{{entry(name(0), current)}};
        IOSet out;
        int kind = pick(rng, 0, 3);
        std::vector<int> children;
        for (int c = 1; c < classCount; ++c)
            if (parent[c] == 0)
                children.push_back(c);
        if (kind == 1 && !children.empty()) {
            int child = children[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(children.size()) - 1))];
            out = IOSet{{entry(name(0), current), entry(name(child), 0)}};
        } else if (kind == 2 && !children.empty()) {
            int child = children.front();
            int q = pick(rng, 0, stateCount[child] - 1);
            in.entries.push_back(entry(name(child), q, true));
            out = IOSet{{entry(name(0), current), entry(name(child), std::min(q + 1, stateCount[child] - 1), true)}};
        } else if (kind == 0 && current + 1 < stateCount[0]) {
            ++current;
            out = IOSet{{entry(name(0), current)}};
        } else {
            out = in;
        }
        f0.nodes.push_back({id, NodeKind::Activity, "activity " + std::to_string(k)});
        f0.flows.emplace_back(previous, id);
        f0.inputSets[id] = {in};
        f0.outputSets[id] = {out};
        previous = id;
    }
    m.fragments.push_back(f0);

    // Entry fragment creating a dependent in the context of its parent.
    if (classCount > 1 && coin(rng)) {
        Fragment f1;
        f1.id = "f1";
        int child = pick(rng, 1, classCount - 1);
        int owner = parent[child];
        int q = pick(rng, 0, stateCount[owner] - 1);
        f1.nodes.push_back({"create", NodeKind::Activity, "create " + name(child)});
        std::vector<IOSet> outputs{IOSet{{entry(name(owner), q), entry(name(child), 0)}}};
        bool followUp = stateCount[child] > 1 && coin(rng);
        if (!followUp && coin(rng))
            outputs.push_back(IOSet{{entry(name(owner), q)}});
        f1.inputSets["create"] = {IOSet{{entry(name(owner), q)}}};
        f1.outputSets["create"] = outputs;
        if (followUp) {
            bool gateway = coin(rng);
            std::string from = "create";
            if (gateway) {
                f1.nodes.push_back({"g", NodeKind::Gateway, "g"});
                f1.flows.emplace_back("create", "g");
                from = "g";
            }
            for (int b = 0; b < (gateway ? 2 : 1); ++b) {
                std::string id = "advance" + std::to_string(b);
                f1.nodes.push_back({id, NodeKind::Activity, "advance " + name(child)});
                f1.flows.emplace_back(from, id);
                f1.inputSets[id] = {IOSet{{entry(name(child), 0)}}};
                f1.outputSets[id] = {IOSet{{entry(name(child), b == 0 ? 1 : 0)}}};
            }
        }
        m.fragments.push_back(f1);
    }

    m.terminationConditions.push_back({{{name(0), state(pick(rng, 0, stateCount[0] - 1))}}});
    return m;
}

CaseModel random_valid_model(std::mt19937& rng)
{
    for (int attempt = 0; attempt < 1000; ++attempt) {
        auto m = random_model_candidate(rng);
        if (validate(m).empty())
            return m;
    }
    throw std::runtime_error("random model generator produced no valid model");
}

} // namespace fcm::testing
