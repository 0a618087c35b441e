#include "doctest.h"

#include "fcm/compiler.hpp"
#include "fcm/explorer.hpp"
#include "oracle.hpp"
#include "scenario.hpp"

#include <algorithm>

using namespace fcm;
using namespace fcm::cpn;
using namespace fcm::testing;

namespace {

bool has(const std::vector<InvariantViolation>& vs, InvariantKind kind)
{
    return std::any_of(vs.begin(), vs.end(), [&](const InvariantViolation& v) { return v.kind == kind; });
}

} // namespace

TEST_CASE("initial markings satisfy the invariants")
{
    for (const char* name : {"minimal.json", "conference-mini.json", "conference-micro.json"}) {
        auto net = compile(load_fixture(name)).net;
        CHECK(check_invariants(net, initial_marking(net)).empty());
    }
}

TEST_CASE("invariant violations on hand-built markings")
{
    Engine engine(load_fixture("conference-mini.json"));
    std::vector<CaseState> trace;
    conference_walkthrough(engine, &trace);
    const auto& net = engine.net();
    auto paper = Id{*net.class_index("Paper"), 0};

    SUBCASE("object on two configuration places")
    {
        auto m = trace[4].marking;
        m.add(*net.config_place(paper.cls, "notified"), paper);
        CHECK(has(check_invariants(net, m), InvariantKind::ConfigurationUniqueness));
    }
    SUBCASE("three reviews for one paper")
    {
        auto m = trace[12].marking;
        auto objects = std::get<IdSet>(m.tokens[net.objects][0]);
        auto assocs = std::get<AssocSet>(m.tokens[net.associations][0]);
        auto reviewCls = *net.class_index("Review");
        REQUIRE(assocs.partner_count(paper, reviewCls) == 2);
        Id extra{reviewCls, 9};
        objects.items.push_back(extra);
        std::sort(objects.items.begin(), objects.items.end());
        assocs.pairs.push_back(Assoc::of(paper, extra));
        std::sort(assocs.pairs.begin(), assocs.pairs.end());
        m.tokens[net.objects] = {objects};
        m.tokens[net.associations] = {assocs};
        m.add(*net.config_place(reviewCls, "required"), extra);
        auto vs = check_invariants(net, m);
        CHECK(has(vs, InvariantKind::UpperBound));
        // the extra id is beyond the counter as well
        CHECK(has(vs, InvariantKind::CounterSoundness));
    }
    SUBCASE("two unit tokens")
    {
        auto m = trace[2].marking;
        m.add(net.initial, Unit{});
        CHECK(has(check_invariants(net, m), InvariantKind::AbstractState));
    }
    SUBCASE("association to an unknown object")
    {
        auto m = trace[2].marking;
        auto assocs = std::get<AssocSet>(m.tokens[net.associations][0]);
        assocs.pairs.push_back(Assoc::of(paper, Id{*net.class_index("Decision"), 0}));
        std::sort(assocs.pairs.begin(), assocs.pairs.end());
        m.tokens[net.associations] = {assocs};
        CHECK(has(check_invariants(net, m), InvariantKind::AssociationsInObjects));
    }
    SUBCASE("walkthrough markings are clean")
    {
        for (const auto& s : trace)
            CHECK(check_invariants(net, s.marking).empty());
    }
}

TEST_CASE("minimal model state space")
{
    // initial, started, after the read, terminated from either
    auto net = compile(load_fixture("minimal.json")).net;
    auto report = explore(net);
    CHECK(report.statesVisited == 5);
    CHECK(report.edges == 4);
    CHECK(report.terminationReachable);
    CHECK_FALSE(report.truncated);
    CHECK(report.violations.empty());
    REQUIRE(report.witness.size() == 2);
    CHECK(report.witness[0].transitionId == "f/start/out0");
    CHECK(report.witness[1].transitionId == "term/0");
    CHECK(oracle_state_count(net, 100) == 5);
}

TEST_CASE("conference-micro state space")
{
    auto net = compile(load_fixture("conference-micro.json")).net;
    auto report = explore(net);
    CHECK(report.terminationReachable);
    CHECK_FALSE(report.truncated);
    CHECK(report.violatingStates == 0);
    CHECK(report.statesVisited < 50000);
    CHECK(to_json(report) == to_json(explore(net)));
    auto j = to_json(report);
    CHECK(j["statesVisited"] == report.statesVisited);
    CHECK(j["terminationReachable"] == true);
}

TEST_CASE("limits truncate")
{
    auto net = compile(load_fixture("conference-micro.json")).net;
    auto one = explore(net, {1, ExploreLimits{}.maxDepth});
    CHECK(one.truncated);
    CHECK(one.statesVisited == 1);
    auto shallow = explore(net, {100000, 2});
    CHECK(shallow.truncated);
    CHECK(shallow.maxDepth == 2);
    CHECK_FALSE(shallow.terminationReachable);
}
