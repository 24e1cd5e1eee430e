#include <doctest.h>

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "corpuslens/errors.hpp"
#include "corpuslens/sentiment.hpp"
#include "corpuslens/util.hpp"

using namespace corpuslens;
using sentiment::Lexicon;
using sentiment::Polarity;
using sentiment::SentimentAnalyzer;

namespace {

const SentimentAnalyzer& analyzer() {
    static const SentimentAnalyzer a(
        Lexicon::load_tsv(std::string(CORPUSLENS_ASSET_DIR) + "/sentiment_lexicon.tsv"));
    return a;
}

}  // namespace

TEST_CASE("empty and unknown-token inputs score zero") {
    const auto empty = analyzer().polarity_scores("");
    CHECK(empty.compound == 0.0);
    CHECK(empty.neg == 0.0);
    CHECK(empty.neu == 0.0);
    CHECK(empty.pos == 0.0);

    const auto unknown = analyzer().polarity_scores("asdf qwert");
    CHECK(unknown.compound == 0.0);
    CHECK(unknown.neu == doctest::Approx(1.0));
}

TEST_CASE("component fractions sum to one when tokens exist") {
    for (const char* text : {"good", "not good", "the lane is TERRIBLE!!", "meh day, fine ride"}) {
        const auto s = analyzer().polarity_scores(text);
        CHECK(std::fabs(s.neg + s.neu + s.pos - 1.0) < 1e-6);
    }
}

TEST_CASE("frozen fixture matches the reference scorer within 1e-4") {
    std::ifstream in(std::string(CORPUSLENS_TEST_DATA_DIR) + "/sentiment_fixture.json");
    REQUIRE(in);
    const auto rows = nlohmann::json::parse(in);
    REQUIRE(rows.size() == 50);
    for (const auto& row : rows) {
        const auto s = analyzer().polarity_scores(row.at("text").get<std::string>());
        INFO("text: ", row.at("text").get<std::string>());
        CHECK(std::fabs(s.compound - row.at("compound").get<double>()) < 1e-4);
        CHECK(std::fabs(s.neg - row.at("neg").get<double>()) < 1e-4);
        CHECK(std::fabs(s.neu - row.at("neu").get<double>()) < 1e-4);
        CHECK(std::fabs(s.pos - row.at("pos").get<double>()) < 1e-4);
    }
}

TEST_CASE("classify thresholds are boundary inclusive") {
    CHECK(sentiment::classify(0.0) == Polarity::Neutral);
    CHECK(sentiment::classify(0.05) == Polarity::Positive);
    CHECK(sentiment::classify(-0.05) == Polarity::Negative);
    CHECK(sentiment::classify(0.0499) == Polarity::Neutral);
    CHECK_THROWS_AS(sentiment::classify(1.5), NumericError);
    CHECK_THROWS_AS(sentiment::classify(std::nan("")), NumericError);
}

TEST_CASE("mean_compound") {
    const std::vector<double> two{0.2, 0.4};
    CHECK(*sentiment::mean_compound(two) == doctest::Approx(0.3));
    const std::vector<double> one{0.7};
    CHECK(*sentiment::mean_compound(one) == doctest::Approx(0.7));
    CHECK_FALSE(sentiment::mean_compound({}).has_value());
}

TEST_CASE("negation flips a minimal pair") {
    CHECK(analyzer().polarity_scores("good").compound > 0.0);
    CHECK(analyzer().polarity_scores("not good").compound < 0.0);
}

TEST_CASE("booster and punctuation monotonicity") {
    const double base = analyzer().polarity_scores("good").compound;
    CHECK(analyzer().polarity_scores("very good").compound >= base);
    CHECK(analyzer().polarity_scores("good!").compound >= base);
    CHECK(analyzer().polarity_scores("good!!").compound >=
          analyzer().polarity_scores("good!").compound);
}

TEST_CASE("allcaps emphasis only fires on mixed-case text") {
    const double mixed = analyzer().polarity_scores("the ride was GREAT").compound;
    const double plain = analyzer().polarity_scores("the ride was great").compound;
    CHECK(mixed > plain);
    // uniform caps text has no differential
    const double upper_all = analyzer().polarity_scores("THE RIDE WAS GREAT").compound;
    CHECK(upper_all == doctest::Approx(plain).epsilon(1e-12));
}

TEST_CASE("but clause reweights both sides") {
    const double with_but = analyzer().polarity_scores("the lane is good but the detour is bad")
                                .compound;
    const double reversed = analyzer().polarity_scores("the lane is bad but the detour is good")
                                .compound;
    CHECK(with_but < 0.0);   // the "bad" side gains weight after "but"
    CHECK(reversed > 0.0);
}

TEST_CASE("property: bounded, deterministic over random token soup") {
    std::vector<std::string> vocab = {"good", "bad",  "great", "terrible", "bike", "lane",
                                      "not",  "very", "hardly", "love",    "hate", "but",
                                      "so",   "!!",   "??",     "GREAT",   "sadly", "at",
                                      "least", "no",  "never",  "this",    "doubt"};
    util::SplitMix64 rng(2024);
    for (int iter = 0; iter < 2000; ++iter) {
        std::string text;
        const std::size_t len = rng.next_below(12);
        for (std::size_t j = 0; j < len; ++j) {
            if (j > 0) text += ' ';
            text += vocab[static_cast<std::size_t>(rng.next_below(vocab.size()))];
        }
        const auto s1 = analyzer().polarity_scores(text);
        const auto s2 = analyzer().polarity_scores(text);
        CHECK(s1.compound >= -1.0);
        CHECK(s1.compound <= 1.0);
        CHECK(s1.compound == s2.compound);
        if (len > 0) {
            CHECK(std::fabs(s1.neg + s1.neu + s1.pos - 1.0) < 1e-6);
        }
    }
}

TEST_CASE("lexicon loader validates") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto good = dir / "lex_ok.tsv";
    util::write_file(good, "alpha\t1.5\t0.5\t[1,2]\nBETA\t-2.0\n");
    const auto lex = Lexicon::load_tsv(good);
    CHECK(lex.size() == 2);
    CHECK(lex.contains("beta"));  // case-insensitive
    CHECK(lex.valence("alpha") == doctest::Approx(1.5));

    const auto bad = dir / "lex_bad.tsv";
    util::write_file(bad, "alpha\tnot_a_number\n");
    CHECK_THROWS_AS(Lexicon::load_tsv(bad), DataError);
    const auto nan_file = dir / "lex_nan.tsv";
    util::write_file(nan_file, "alpha\tnan\n");
    CHECK_THROWS_AS(Lexicon::load_tsv(nan_file), DataError);
}
