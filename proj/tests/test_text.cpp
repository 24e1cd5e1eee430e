#include <doctest.h>

#include "corpuslens/text.hpp"

using namespace corpuslens;

TEST_CASE("tokenize lowercases and splits on punctuation") {
    const auto toks = text::tokenize("Protected Bike-Lane!");
    REQUIRE(toks == std::vector<std::string>{"protected", "bike", "lane"});
}

TEST_CASE("tokenize of empty text") {
    CHECK(text::tokenize("").empty());
    CHECK(text::tokenize("  \t ").empty());
}

TEST_CASE("tokenize treats unicode punctuation as separators") {
    // U+2026 horizontal ellipsis
    const auto toks = text::tokenize("3rd Ave… repaved");
    REQUIRE(toks == std::vector<std::string>{"3rd", "ave", "repaved"});
}

TEST_CASE("tokenize keeps non-ascii letters inside tokens") {
    const auto toks = text::tokenize("Malmö cyklister");
    REQUIRE(toks.size() == 2);
    CHECK(toks[0] == "malmö");
}

TEST_CASE("contains_phrase finds contiguous subsequences only") {
    const auto toks = text::tokenize("new protected bike lane downtown");
    CHECK(text::contains_phrase(toks, text::tokenize("protected bike lane")));
    CHECK(text::contains_phrase(toks, text::tokenize("lane downtown")));
    CHECK_FALSE(text::contains_phrase(toks, text::tokenize("protected lane")));
    CHECK_FALSE(text::contains_phrase(toks, {}));
}

TEST_CASE("normalize_joined collapses whitespace") {
    CHECK(text::normalize_joined("  A  b\tC ") == "a b c");
}

TEST_CASE("utf8_length counts codepoints") {
    CHECK(text::utf8_length(":)") == 2);
    CHECK(text::utf8_length("éé") == 2);
}
