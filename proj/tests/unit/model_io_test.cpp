#include "doctest.h"

#include "fcm/error.hpp"
#include "fcm/model_io.hpp"
#include "random_model.hpp"
#include "scenario.hpp"

#include <fstream>
#include <sstream>

using namespace fcm;
using namespace fcm::testing;
using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

json minimal_doc()
{
    return json::parse(read_file(models_dir() / "minimal.json"));
}

} // namespace

TEST_CASE("minimal document parses")
{
    auto m = parse_case_model(minimal_doc().dump());
    CHECK(m.classes.size() == 1);
    CHECK(m.fragments.size() == 1);
    CHECK(m.classes[0].isCaseClass);
    CHECK(m.fragments[0].nodes.size() == 2);
    CHECK(m.terminationConditions.size() == 1);
}

TEST_CASE("conference-mini counts")
{
    auto m = load_fixture("conference-mini.json");
    CHECK(m.classes.size() == 5);
    CHECK(m.fragments.size() == 6);
    CHECK(m.terminationConditions.size() == 1);
    CHECK(m.associations.size() == 5);
    CHECK(m.case_class()->name == "Conference");
    CHECK(m.bounds("Paper", "Conference") == Bounds{0, 2, 5});
    CHECK(m.bounds("Conference", "Paper") == Bounds{1, 1, 1});
    CHECK(m.bounds("Review", "Paper") == Bounds{0, 2, 2});
    CHECK(m.bounds("Review", "Decision") == Bounds{2, 2, 2});
    CHECK(m.bounds("AuthorTeam", "Review") == Bounds{});
    CHECK_FALSE(m.associated("AuthorTeam", "Review"));
}

TEST_CASE("missing sections")
{
    for (const char* section : {"classes", "fragments", "terminationConditions"}) {
        auto doc = minimal_doc();
        doc.erase(section);
        CAPTURE(section);
        try {
            parse_case_model(doc.dump());
            FAIL("expected MissingSection");
        } catch (const MissingSection& e) {
            CHECK(e.section() == section);
        }
    }
}

TEST_CASE("constraints section is optional")
{
    auto doc = minimal_doc();
    doc.erase("constraints");
    CHECK(parse_case_model(doc.dump()).associations.empty());
}

TEST_CASE("malformed documents carry a location")
{
    CHECK_THROWS_AS(parse_case_model("{ not json"), ParseError);

    auto doc = minimal_doc();
    doc["classes"][0]["colour"] = "red";
    try {
        parse_case_model(doc.dump());
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.location() == "/classes/0/colour");
    }

    doc = minimal_doc();
    doc["fragments"][0]["nodes"][1]["type"] = "task";
    CHECK_THROWS_AS(parse_case_model(doc.dump()), ParseError);

    doc = minimal_doc();
    doc["classes"][0]["attributes"] = json::array({{{"name", "n"}, {"type", "float"}}});
    CHECK_THROWS_AS(parse_case_model(doc.dump()), ParseError);

    doc = minimal_doc();
    doc["unexpected"] = 1;
    CHECK_THROWS_AS(parse_case_model(doc.dump()), ParseError);
}

TEST_CASE("attribute required flag defaults to true")
{
    auto m = load_fixture("conference-mini.json");
    const auto& review = m.class_named("Review");
    REQUIRE(review.attributes.size() == 2);
    CHECK(review.attributes[0].required);
    CHECK_FALSE(review.attributes[1].required);
    CHECK(m.class_named("Paper").attributes[0].required);
}

TEST_CASE("round trip of fixtures")
{
    for (const char* name : {"minimal.json", "conference-mini.json", "conference-micro.json", "broken-bounds.json",
                             "many-to-many.json"}) {
        CAPTURE(name);
        auto m = load_fixture(name);
        CHECK(parse_case_model(serialize_case_model(m)) == m);
        CHECK(model_hash(parse_case_model(serialize_case_model(m))) == model_hash(m));
    }
}

TEST_CASE("round trip of random models")
{
    std::mt19937 rng(7);
    for (int k = 0; k < 200; ++k) {
        auto m = random_model_candidate(rng);
        CHECK(case_model_from_json(to_json(m)) == m);
    }
}

TEST_CASE("model hash separates models")
{
    auto m = load_fixture("conference-mini.json");
    auto h = model_hash(m);
    CHECK(h.size() == 16);
    CHECK(model_hash(m) == h);
    m.classes[2].attributes[0].name = "heading";
    CHECK(model_hash(m) != h);
}
