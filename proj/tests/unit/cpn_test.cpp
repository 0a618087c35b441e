#include "doctest.h"

#include "builders.hpp"
#include "fcm/compiler.hpp"
#include "fcm/engine.hpp"
#include "fcm/error.hpp"
#include "fcm/net_io.hpp"
#include "scenario.hpp"

#include <algorithm>

using namespace fcm;
using namespace fcm::cpn;
using namespace fcm::testing;
using nlohmann::json;

namespace {

const Net& mini_net()
{
    static const Net net = compile(load_fixture("conference-mini.json")).net;
    return net;
}

PlaceIndex place(const Net& net, const std::string& id)
{
    auto p = net.place_index(id);
    REQUIRE(p.has_value());
    return *p;
}

Id id_of(const Net& net, const std::string& cls, std::uint32_t n)
{
    return Id{*net.class_index(cls), n};
}

std::size_t total_tokens(const Marking& m)
{
    std::size_t n = 0;
    for (const auto& ts : m.tokens)
        n += ts.size();
    return n;
}

/// Fires the unique enabled binding of `tid` whose summary matches.
Marking fire_one(const Net& net, const Marking& m, const std::string& tid, std::size_t pick = 0)
{
    auto t = net.transition_index(tid);
    REQUIRE(t.has_value());
    auto bs = enabled_bindings(net, m, *t);
    REQUIRE(bs.size() > pick);
    return fire(net, m, *t, bs[pick]);
}

} // namespace

TEST_CASE("initial marking of the conference net")
{
    const auto& net = mini_net();
    auto m = initial_marking(net);
    CHECK(m.tokens[net.initial] == std::vector<ColorValue>{Unit{}});
    CHECK(m.tokens[net.running].empty());
    CHECK(m.tokens[net.closed].empty());
    CHECK(net.counters.size() == 5);
    for (auto c : net.counters)
        CHECK(m.tokens[c] == std::vector<ColorValue>{std::uint64_t{0}});
    CHECK(m.tokens[net.objects] == std::vector<ColorValue>{IdSet{}});
    CHECK(m.tokens[net.associations] == std::vector<ColorValue>{AssocSet{}});
    CHECK(total_tokens(m) == 1 + 5 + 2);
}

TEST_CASE("initial marking of the minimal net")
{
    auto net = compile(load_fixture("minimal.json")).net;
    auto m = initial_marking(net);
    CHECK(m.tokens[net.initial].size() == 1);
    CHECK(net.counters.size() == 1);
    CHECK(m.tokens[net.counters[0]] == std::vector<ColorValue>{std::uint64_t{0}});
}

TEST_CASE("only the start event is enabled initially")
{
    const auto& net = mini_net();
    auto en = enabled_bindings(net, initial_marking(net));
    REQUIRE(en.size() == 1);
    CHECK(net.transitions[en[0].transition].id == "fa/s/out0");
}

TEST_CASE("firing the start event")
{
    const auto& net = mini_net();
    auto m0 = initial_marking(net);
    auto m1 = fire_one(net, m0, "fa/s/out0");
    auto conf = id_of(net, "Conference", 0);
    CHECK(m1.tokens[net.initial].empty());
    CHECK(m1.tokens[net.running] == std::vector<ColorValue>{Unit{}});
    CHECK(m1.tokens[place(net, "Conference[scheduled]")] == std::vector<ColorValue>{conf});
    CHECK(m1.tokens[place(net, "cnt_Conference")] == std::vector<ColorValue>{std::uint64_t{1}});
    CHECK(m1.tokens[place(net, "cnt_Paper")] == std::vector<ColorValue>{std::uint64_t{0}});
    CHECK(m1.tokens[net.objects] == std::vector<ColorValue>{IdSet{{conf}}});
    CHECK(m1.tokens[net.associations] == std::vector<ColorValue>{AssocSet{}});

    CFMap expected;
    expected.slots.resize(net.classes.size());
    expected.slots[conf.cls] = conf;
    CHECK(m1.tokens[place(net, "cf/fa/s->open_submission")] == std::vector<ColorValue>{expected});
    // the input marking is untouched
    CHECK(m0 == initial_marking(net));
}

TEST_CASE("first submission creates team and paper")
{
    const auto& net = mini_net();
    auto m = fire_one(net, initial_marking(net), "fa/s/out0");
    m = fire_one(net, m, "fa/open_submission/in0/out0");
    CHECK(enabled_bindings(net, m, *net.transition_index("fb/submit_paper/in1/out0")).empty());
    m = fire_one(net, m, "fb/submit_paper/in0/out0");

    auto conf = id_of(net, "Conference", 0), team = id_of(net, "AuthorTeam", 0), paper = id_of(net, "Paper", 0);
    CHECK(m.tokens[place(net, "AuthorTeam[signed_up]")] == std::vector<ColorValue>{team});
    CHECK(m.tokens[place(net, "Paper[submitted]")] == std::vector<ColorValue>{paper});
    const auto& assocs = std::get<AssocSet>(m.tokens[net.associations][0]);
    CHECK(assocs.pairs.size() == 2);
    CHECK(assocs.contains(Assoc::of(team, paper)));
    CHECK(assocs.contains(Assoc::of(conf, paper)));
    CHECK(assocs.partner_count(paper, conf.cls) == 1);

    const auto& cf =
        std::get<CFMap>(m.tokens[place(net, "cf/fb/submit_paper->send_submission_notification")][0]);
    CHECK(cf.slots[conf.cls] == conf);
    CHECK(cf.slots[team.cls] == team);
    CHECK(cf.slots[paper.cls] == paper);
    CHECK_FALSE(cf.slots[id_of(net, "Review", 0).cls].has_value());

    // a repeat submission binds the existing team
    auto repeat = enabled_bindings(net, m, *net.transition_index("fb/submit_paper/in1/out0"));
    REQUIRE(repeat.size() == 1);
    auto& t = net.transitions[*net.transition_index("fb/submit_paper/in1/out0")];
    CHECK(repeat[0][*t.var_named("authorteam")] == ColorValue{team});
}

TEST_CASE("two available reviews: accept and reject, no additional review")
{
    Engine engine(load_fixture("conference-mini.json"));
    auto s = engine.create_case();
    s = step(engine, s, "fa/s/out0", {}, {{"Conference", {{"name", "c"}}}});
    s = step(engine, s, "fa/open_submission/in0/out0");
    for (int k = 0; k < 2; ++k)
        s = step(engine, s, "fb/submit_paper/in0/out0", {},
                 {{"AuthorTeam", {{"contact", "t"}}}, {"Paper", {{"title", "p"}, {"studentPaper", false}}}});
    s = step(engine, s, "fa/close_submission/in0/out0");
    for (int k = 0; k < 2; ++k)
        s = step(engine, s, "fc/assign_reviewer/in0/out0", {{"paper", "Paper#0"}}, {{"Review", {{"reviewer", "r"}}}});
    s = step(engine, s, "fd/create_review/in0/out0", {{"review", "Review#0"}});
    s = step(engine, s, "fd/create_review/in0/out0", {{"review", "Review#1"}});

    const auto& net = engine.net();
    auto review0 = id_of(net, "Review", 0), review1 = id_of(net, "Review", 1);
    IdSet both{{review0, review1}};
    for (const char* tid : {"fe/decide_on_paper/in0/out1", "fe/decide_on_paper/in0/out2"}) {
        auto t = *net.transition_index(tid);
        auto bs = enabled_bindings(net, s.marking, t);
        REQUIRE(bs.size() == 1);
        CHECK(bs[0][*net.transitions[t].var_named("review_set")] == ColorValue{both});
        CHECK(bs[0][*net.transitions[t].var_named("paper")] == ColorValue{id_of(net, "Paper", 0)});
    }
    // Paper#1 has no reviews yet, so only its binding remains
    auto more = *net.transition_index("fe/decide_on_paper/in0/out0");
    auto moreBindings = enabled_bindings(net, s.marking, more);
    REQUIRE(moreBindings.size() == 1);
    CHECK(moreBindings[0][*net.transitions[more].var_named("paper")] == ColorValue{id_of(net, "Paper", 1)});
    CHECK(enabled_bindings(net, s.marking, *net.transition_index("fc/assign_reviewer/in0/out0")).size() == 1);
}

TEST_CASE("a marking with a token on o only enables nothing")
{
    const auto& net = mini_net();
    Marking m;
    m.tokens.resize(net.places.size());
    m.add(net.closed, Unit{});
    CHECK(enabled_bindings(net, m).empty());
}

TEST_CASE("fire rejects disabled bindings and is pure")
{
    const auto& net = mini_net();
    auto m0 = initial_marking(net);
    auto open = *net.transition_index("fa/open_submission/in0/out0");
    Binding bogus(net.transitions[open].binding_size(), Unit{});
    CHECK_THROWS_AS(fire(net, m0, open, bogus), NotEnabled);

    auto start = *net.transition_index("fa/s/out0");
    auto b = enabled_bindings(net, m0, start).at(0);
    CHECK(is_enabled(net, m0, start, b));
    CHECK(fire(net, m0, start, b) == fire(net, m0, start, b));
    CHECK_FALSE(is_enabled(net, fire(net, m0, start, b), start, b));
}

TEST_CASE("gateway passes the control flow unchanged")
{
    auto net = compile(gateway_model(1, 2)).net;
    auto m = fire_one(net, initial_marking(net), "f/s/out0");
    auto forkIn = place(net, "cf/f/s->fork");
    REQUIRE(m.tokens[forkIn].size() == 1);
    auto token = m.tokens[forkIn][0];
    m = fire_one(net, m, "f/fork/s/in0");
    CHECK(m.tokens[forkIn].empty());
    CHECK(m.tokens[place(net, "cf/f/fork->in0")] == std::vector<ColorValue>{token});
    m = fire_one(net, m, "f/in0/in0/out0");
    auto bs = enabled_bindings(net, m);
    std::vector<std::string> ids;
    for (const auto& eb : bs)
        ids.push_back(net.transitions[eb.transition].id);
    CHECK(ids == std::vector<std::string>{"f/g/in0/out0", "f/g/in0/out1", "term/0"});
}

TEST_CASE("marking keeps tokens sorted")
{
    Marking m;
    m.tokens.resize(1);
    m.add(0, Id{1, 2});
    m.add(0, Id{0, 5});
    m.add(0, Id{1, 2});
    m.add(0, Id{0, 1});
    CHECK(m.tokens[0] == std::vector<ColorValue>{Id{0, 1}, Id{0, 5}, Id{1, 2}, Id{1, 2}});
    CHECK(m.count(0, Id{1, 2}) == 2);
    CHECK(m.remove(0, Id{1, 2}));
    CHECK(m.count(0, Id{1, 2}) == 1);
    CHECK_FALSE(m.remove(0, Id{3, 3}));

    Marking other;
    other.tokens.resize(1);
    for (auto id : {Id{1, 2}, Id{0, 1}, Id{0, 5}})
        other.add(0, id);
    CHECK(other == m);
    CHECK(MarkingHash{}(other) == MarkingHash{}(m));
}

TEST_CASE("association sets")
{
    AssocSet s{{Assoc::of(Id{0, 0}, Id{1, 0}), Assoc::of(Id{1, 1}, Id{0, 0})}};
    std::sort(s.pairs.begin(), s.pairs.end());
    CHECK(Assoc::of(Id{1, 0}, Id{0, 0}) == Assoc::of(Id{0, 0}, Id{1, 0}));
    CHECK(s.partners(Id{0, 0}, 1) == std::vector<Id>{Id{1, 0}, Id{1, 1}});
    CHECK(s.partner_count(Id{1, 1}, 0) == 1);
    CHECK(s.partner_count(Id{1, 1}, 1) == 0);
}

TEST_CASE("net index rejects malformed nets")
{
    auto net = mini_net();
    SUBCASE("duplicate transition")
    {
        net.transitions.push_back(net.transitions[0]);
        CHECK_THROWS_AS(net.index(), Error);
    }
    SUBCASE("variable used before it is bound")
    {
        auto& t = net.transitions[0];
        t.guard.push_back(MeetsLower{static_cast<VarIndex>(t.vars.size() + 3), 1});
        CHECK_THROWS_AS(net.index(), Error);
    }
    SUBCASE("missing running place")
    {
        net.places[net.running].role = PlaceRole::Config;
        CHECK_THROWS_AS(net.index(), Error);
    }
}

TEST_CASE("net exchange format round trips")
{
    for (const char* name : {"minimal.json", "conference-mini.json", "conference-micro.json"}) {
        CAPTURE(name);
        auto net = compile(load_fixture(name)).net;
        auto doc = to_json(net);
        auto back = net_from_json(doc);
        CHECK(to_json(back) == doc);
        CHECK(serialize_net(back) == serialize_net(net));
        CHECK(enabled_bindings(back, initial_marking(back)) == enabled_bindings(net, initial_marking(net)));
    }
    CHECK_THROWS_AS(net_from_json(json::parse(R"({"classes": 3})")), ParseError);
}

TEST_CASE("token values in JSON")
{
    const auto& net = mini_net();
    auto paper = id_of(net, "Paper", 3), conf = id_of(net, "Conference", 0);
    CHECK(value_to_json(net, Unit{}).is_null());
    CHECK(value_to_json(net, std::uint64_t{4}) == json(4));
    CHECK(value_to_json(net, paper) == json::array({"Paper", 3}));
    CHECK(value_to_json(net, IdSet{{conf, paper}}) == json::parse(R"([["Conference",0],["Paper",3]])"));
    CHECK(value_to_json(net, AssocSet{{Assoc::of(paper, conf)}}) == json::parse(R"([[["Conference",0],["Paper",3]]])"));
    CFMap cf;
    cf.slots.resize(net.classes.size());
    cf.slots[paper.cls] = paper;
    auto j = value_to_json(net, cf);
    CHECK(j["Paper"] == json::array({"Paper", 3}));
    CHECK(j["Review"].is_null());
    CHECK(value_from_json(net, ColorSet::CFMap, j) == ColorValue{cf});
    CHECK(value_from_json(net, ColorSet::Id, json::array({"Paper", 3})) == ColorValue{paper});
    CHECK_THROWS_AS(id_from_json(net, json::array({"Poster", 0})), UnknownClass);
    CHECK_THROWS_AS(id_from_json(net, json::array({"Paper"})), ParseError);

    Marking m = initial_marking(net);
    auto first = enabled_bindings(net, m).at(0);
    m = fire(net, m, first.transition, first.binding);
    CHECK(marking_from_json(net, marking_to_json(net, m)) == m);
}
