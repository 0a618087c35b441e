#include "doctest.h"

#include "builders.hpp"
#include "fcm/error.hpp"
#include "fcm/model_io.hpp"
#include "fcm/preprocess.hpp"
#include "fcm/validate.hpp"
#include "random_model.hpp"
#include "scenario.hpp"

#include <algorithm>
#include <deque>
#include <set>

using namespace fcm;
using namespace fcm::testing;

namespace {

using StateSet = std::set<std::string>;

const OlcTransition& olc_transition(const CaseModel& m, const std::string& cls, const std::string& from,
                                    const std::string& to)
{
    const auto* t = m.class_named(cls).olc.find_transition(from, to);
    REQUIRE(t != nullptr);
    return *t;
}

/// States reachable from `from` (inclusive), by breadth-first search over
/// the transition list.
StateSet reach(const ObjectLifeCycle& olc, const std::string& from)
{
    StateSet seen{from};
    std::deque<std::string> queue{from};
    while (!queue.empty()) {
        auto q = queue.front();
        queue.pop_front();
        for (const auto& t : olc.transitions)
            if (t.from == q && seen.insert(t.to).second)
                queue.push_back(t.to);
    }
    return seen;
}

/// Supporter states in which some set pair co-reads or co-creates the
/// supporter with a newly created dependent.
StateSet naive_supporting(const CaseModel& m, const std::string& supporter, const std::string& dependent)
{
    auto single = [](const IOSet& set, const std::string& cls) {
        const auto* e = set.find(cls);
        return e && !e->collection ? e : nullptr;
    };
    StateSet states;
    for (const auto& f : m.fragments)
        for (const auto& n : f.nodes) {
            if (n.kind == NodeKind::Gateway)
                continue;
            auto ins = n.kind == NodeKind::StartEvent ? std::vector<IOSet>{IOSet{}} : f.inputs_of(n.id);
            for (const auto& in : ins)
                for (const auto& out : f.outputs_of(n.id)) {
                    if (!single(out, dependent) || single(in, dependent))
                        continue;
                    if (const auto* s = single(in, supporter))
                        states.insert(s->state);
                    else if (const auto* s = single(out, supporter))
                        states.insert(s->state);
                }
        }
    return states;
}

} // namespace

TEST_CASE("supporting states of the conference")
{
    auto m = load_fixture("conference-mini.json");
    CHECK(supporting_states(m, "Conference", "Paper") == StateSet{"open_for_submissions"});
    CHECK(supporting_states(m, "Paper", "Review") == StateSet{"in_review"});
    CHECK(supporting_states(m, "Paper", "Decision") == StateSet{"in_review"});
    CHECK(supporting_states(m, "Decision", "Review").empty());
    CHECK_THROWS_AS(supporting_states(m, "Conference", "Poster"), UnknownClass);
}

TEST_CASE("co-creation at a start event supports")
{
    auto m = two_class_model({1, 1, 1}, {0, 1, 2});
    m.fragments[0].outputSets["s"] = {io({{"A", "a0"}, {"B", "b0"}})};
    CHECK(supporting_states(m, "A", "B") == StateSet{"a0"});
}

TEST_CASE("goal guards of the conference")
{
    auto m = load_fixture("conference-mini.json");
    auto g = augment_goal_guards(m);
    CHECK(olc_transition(g, "Conference", "open_for_submissions", "closed_for_submissions").guards ==
          std::vector<GoalGuard>{{"Paper", 2}});
    CHECK(olc_transition(g, "Conference", "scheduled", "open_for_submissions").guards.empty());
    CHECK(olc_transition(g, "Conference", "closed_for_submissions", "reviewing_closed").guards.empty());
    auto paperGuards = olc_transition(g, "Paper", "in_review", "reviewed").guards;
    std::sort(paperGuards.begin(), paperGuards.end());
    CHECK(paperGuards == std::vector<GoalGuard>{{"Decision", 1}, {"Review", 2}});
    // A team is co-created with its first paper, so leaving "submitted"
    // checks the (always satisfied) team bound.
    CHECK(olc_transition(g, "Paper", "submitted", "in_review").guards == std::vector<GoalGuard>{{"AuthorTeam", 1}});
    CHECK(validate(g).empty());
}

TEST_CASE("no guards when goal bounds equal lower bounds")
{
    auto m = load_fixture("minimal.json");
    CHECK(augment_goal_guards(m) == m);
    auto two = two_class_model({1, 1, 1}, {0, 0, 3});
    CHECK(augment_goal_guards(two) == two);
}

TEST_CASE("no guard when a later state supports again")
{
    auto m = load_fixture("conference-mini.json");
    m.find_class("Conference")->olc.transitions.push_back({"closed_for_submissions", "open_for_submissions", {}});
    Fragment reopen;
    reopen.id = "fr";
    reopen.nodes = {{"reopen_submission", NodeKind::Activity, "reopen submission"}};
    reopen.inputSets["reopen_submission"] = {io({{"Conference", "closed_for_submissions"}})};
    reopen.outputSets["reopen_submission"] = {io({{"Conference", "open_for_submissions"}})};
    m.fragments.push_back(reopen);
    REQUIRE(validate(m).empty());

    CHECK(reach(m.class_named("Conference").olc, "closed_for_submissions").count("open_for_submissions") == 1);
    auto g = augment_goal_guards(m);
    CHECK(olc_transition(g, "Conference", "open_for_submissions", "closed_for_submissions").guards.empty());
    CHECK(olc_transition(g, "Paper", "in_review", "reviewed").guards.size() == 2);
}

TEST_CASE("augmentation is idempotent")
{
    for (const char* name : {"minimal.json", "conference-mini.json", "conference-micro.json"}) {
        auto once = augment_goal_guards(load_fixture(name));
        CHECK(augment_goal_guards(once) == once);
    }
    std::mt19937 rng(5);
    for (int k = 0; k < 100; ++k) {
        auto once = augment_goal_guards(random_valid_model(rng));
        CHECK(augment_goal_guards(once) == once);
    }
}

TEST_CASE("guards sit exactly on transitions leaving supporting states")
{
    std::mt19937 rng(17);
    int guarded = 0;
    for (int k = 0; k < 200; ++k) {
        auto m = random_valid_model(rng);
        auto g = augment_goal_guards(m);
        CHECK(validate(g).empty());
        for (const auto& c : g.classes) {
            for (const auto& t : c.olc.transitions) {
                std::vector<GoalGuard> expected;
                for (const auto& d : g.classes) {
                    auto goal = g.bounds(d.name, c.name).goalLower;
                    if (goal == 0 || d.name == c.name)
                        continue;
                    auto support = naive_supporting(m, c.name, d.name);
                    CHECK(support == supporting_states(m, c.name, d.name));
                    if (!support.count(t.from))
                        continue;
                    bool leaves = true;
                    for (const auto& q : reach(c.olc, t.to))
                        if (support.count(q))
                            leaves = false;
                    if (leaves)
                        expected.push_back({d.name, goal});
                }
                std::sort(expected.begin(), expected.end());
                auto actual = t.guards;
                std::sort(actual.begin(), actual.end());
                CAPTURE(serialize_case_model(m));
                CHECK(actual == expected);
                guarded += !actual.empty();
            }
        }
    }
    CHECK(guarded > 10);
}
