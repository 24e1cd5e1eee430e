#include <doctest.h>

#include "corpuslens/aspects.hpp"
#include "corpuslens/errors.hpp"
#include "corpuslens/util.hpp"

using namespace corpuslens;
using aspects::AspectLexicon;

TEST_CASE("match_aspects on the spec phrase example") {
    AspectLexicon lex{{"protected lanes", {"protected lane", "protected bike lane"}},
                      {"bike lanes (general)", {"bike lane"}}};
    const auto got = aspects::match_aspects("new protected bike lane", lex);
    CHECK(got == std::vector<std::string>{"protected lanes", "bike lanes (general)"});
    CHECK(aspects::match_aspects("lost my saddle bag", lex).empty());
}

TEST_CASE("phrases match token subsequences, not raw substrings") {
    AspectLexicon lex{{"bike lanes (general)", {"bike lane"}}};
    CHECK(aspects::match_aspects("sbike lanes", lex).empty());
    CHECK_FALSE(aspects::match_aspects("bike lane!", lex).empty());
}

TEST_CASE("twenty hand-labeled posts agree with the default lexicon") {
    const auto lex = aspects::default_aspect_lexicon();
    const std::vector<std::pair<std::string, std::vector<std::string>>> fixture = {
        {"New protected bike lane on 3rd Ave", {"protected lanes", "bike lanes (general)"}},
        {"They painted a sharrow on the hill", {"painted lanes"}},
        {"The trail was muddy after the rain", {"paths and trails"}},
        {"No bike parking near the station", {"parking and storage"}},
        {"The intersection at 5th needs a bike signal", {"intersections and signals"}},
        {"You can take your bike on the train after 7pm", {"transit integration"}},
        {"Construction closed the towpath for a month",
         {"paths and trails", "construction and roadworks"}},
        {"lost my saddle bag on the commute", {}},
        {"The cycle track along the canal is separated by bollards", {"protected lanes"}},
        {"Repaved the bike lane and added a physical barrier",
         {"protected lanes", "bike lanes (general)", "construction and roadworks"}},
        {"The roundabout design scares me", {"intersections and signals"}},
        {"City unveiled its complete streets plan", {"general infrastructure"}},
        {"Bike racks at the metro are always full", {"parking and storage"}},
        {"Greenway extension opens next spring", {"paths and trails"}},
        {"Paint only lanes do nothing for safety", {"painted lanes"}},
        {"There is a detour around the roadworks on Main", {"construction and roadworks"}},
        {"Put your bike on the bus rack", {"transit integration"}},
        {"The door zone lane on Pine is dangerous", {"painted lanes"}},
        {"Connectivity between neighborhoods is poor", {"general infrastructure"}},
        {"The crosswalk timing favors cars over bikes", {"intersections and signals"}},
    };
    REQUIRE(fixture.size() == 20);
    for (const auto& [text, expected] : fixture) {
        INFO("text: ", text);
        CHECK(aspects::match_aspects(text, lex) == expected);
    }
}

TEST_CASE("adding a keyword never removes an assignment") {
    const auto base = aspects::default_aspect_lexicon();
    auto wider = base;
    wider["general infrastructure"].push_back("bridge");
    wider["paths and trails"].push_back("canal");
    const std::vector<std::string> texts = {
        "the bridge over the canal",  "bike lane on the bridge",
        "trail by the canal",          "construction near the stop sign",
        "nothing to see here",
    };
    for (const auto& t : texts) {
        const auto before = aspects::match_aspects(t, base);
        const auto after = aspects::match_aspects(t, wider);
        for (const auto& aspect : before) {
            CHECK(std::find(after.begin(), after.end(), aspect) != after.end());
        }
    }
}

TEST_CASE("aspect_summary aggregates per region and aspect") {
    std::vector<aspects::DocAspects> docs = {
        {"a", "US", {"paths and trails"}, 0.1},
        {"b", "US", {"paths and trails"}, 0.3},
        {"c", "US", {}, 0.9},
    };
    const auto rows = aspects::aspect_summary(docs);
    REQUIRE(rows.size() == 1);  // unassigned doc contributes nothing; empty cells omitted
    CHECK(rows[0].region == "US");
    CHECK(rows[0].aspect == "paths and trails");
    CHECK(rows[0].n == 2);
    CHECK(rows[0].mean == doctest::Approx(0.2));
    CHECK(rows[0].median == doctest::Approx(0.2));
}

TEST_CASE("aspect_summary row order is (region, canonical aspect order)") {
    std::vector<aspects::DocAspects> docs = {
        {"a", "US", {"general infrastructure"}, 0.0},
        {"b", "US", {"protected lanes"}, 0.0},
        {"c", "EU", {"painted lanes"}, 0.0},
    };
    const auto rows = aspects::aspect_summary(docs);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].region == "EU");
    CHECK(rows[1].aspect == "protected lanes");
    CHECK(rows[2].aspect == "general infrastructure");
}

TEST_CASE("multi-assignment keeps per-cell counts of distinct posts") {
    std::vector<aspects::DocAspects> docs = {
        {"a", "US", {"protected lanes", "bike lanes (general)"}, 0.5},
        {"b", "US", {"bike lanes (general)"}, -0.5},
    };
    const auto rows = aspects::aspect_summary(docs);
    std::size_t total_n = 0;
    for (const auto& r : rows) total_n += r.n;
    CHECK(total_n == 3);  // >= number of assigned posts under multi-assignment
}

TEST_CASE("median conventions") {
    CHECK(aspects::median({1.0, 3.0}) == doctest::Approx(2.0));
    CHECK(aspects::median({1.0, 2.0, 4.0}) == doctest::Approx(2.0));
}

TEST_CASE("aspect lexicon loader enforces the canonical aspect set") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto bad = dir / "aspect_bad.json";
    util::write_file(bad, "{\"bike stuff\": [\"bike\"]}");
    CHECK_THROWS_AS(aspects::load_aspect_lexicon(bad), DataError);

    const auto asset = std::string(CORPUSLENS_ASSET_DIR) + "/aspect_lexicon.json";
    const auto lex = aspects::load_aspect_lexicon(asset);
    CHECK(lex.size() == 9);
    CHECK(lex == aspects::default_aspect_lexicon());
}
