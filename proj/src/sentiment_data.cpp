#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "corpuslens/sentiment.hpp"

namespace corpuslens::sentiment::rules {

namespace {

const std::unordered_set<std::string>& negate_set() {
    static const std::unordered_set<std::string> s = {
        "aint", "arent", "cannot", "cant", "couldnt", "darent", "didnt", "doesnt", "ain't",
        "aren't", "can't", "couldn't", "daren't", "didn't", "doesn't", "dont", "hadnt", "hasnt",
        "havent", "isnt", "mightnt", "mustnt", "neither", "don't", "hadn't", "hasn't", "haven't",
        "isn't", "mightn't", "mustn't", "neednt", "needn't", "never", "none", "nope", "nor", "not",
        "nothing", "nowhere", "oughtnt", "shant", "shouldnt", "uhuh", "wasnt", "werent",
        "oughtn't", "shan't", "shouldn't", "uh-uh", "wasn't", "weren't", "without", "wont",
        "wouldnt", "won't", "wouldn't", "rarely", "seldom", "despite"};
    return s;
}

const std::unordered_map<std::string, double>& booster_map() {
    constexpr double I = kBoosterIncr;
    constexpr double D = kBoosterDecr;
    static const std::unordered_map<std::string, double> m = {
        {"absolutely", I}, {"amazingly", I},     {"awfully", I},      {"completely", I},
        {"considerable", I}, {"considerably", I}, {"decidedly", I},    {"deeply", I},
        {"effing", I},     {"enormous", I},      {"enormously", I},   {"entirely", I},
        {"especially", I}, {"exceptional", I},   {"exceptionally", I}, {"extreme", I},
        {"extremely", I},  {"fabulously", I},    {"flipping", I},     {"flippin", I},
        {"frackin", I},    {"fracking", I},      {"fricking", I},     {"frickin", I},
        {"frigging", I},   {"friggin", I},       {"fully", I},        {"fuckin", I},
        {"fucking", I},    {"fuggin", I},        {"fugging", I},      {"greatly", I},
        {"hella", I},      {"highly", I},        {"hugely", I},       {"incredible", I},
        {"incredibly", I}, {"intensely", I},     {"major", I},        {"majorly", I},
        {"more", I},       {"most", I},          {"particularly", I}, {"purely", I},
        {"quite", I},      {"really", I},        {"remarkably", I},   {"so", I},
        {"substantially", I}, {"thoroughly", I}, {"total", I},        {"totally", I},
        {"tremendous", I}, {"tremendously", I},  {"uber", I},         {"unbelievably", I},
        {"unusually", I},  {"utter", I},         {"utterly", I},      {"very", I},
        {"almost", D},     {"barely", D},        {"hardly", D},       {"just enough", D},
        {"kind of", D},    {"kinda", D},         {"kindof", D},       {"kind-of", D},
        {"less", D},       {"little", D},        {"marginal", D},     {"marginally", D},
        {"occasional", D}, {"occasionally", D},  {"partly", D},       {"scarce", D},
        {"scarcely", D},   {"slight", D},        {"slightly", D},     {"somewhat", D},
        {"sort of", D},    {"sorta", D},         {"sortof", D},       {"sort-of", D}};
    return m;
}

const std::unordered_map<std::string, double>& special_case_map() {
    static const std::unordered_map<std::string, double> m = {
        {"the shit", 3.0},      {"the bomb", 3.0},   {"bad ass", 1.5},
        {"badass", 1.5},        {"bus stop", 0.0},   {"yeah right", -2.0},
        {"kiss of death", -1.5}, {"to die for", 3.0}, {"beating heart", 3.1},
        {"broken heart", -2.9}};
    return m;
}

}  // namespace

bool is_negation(const std::string& lower_token) {
    if (negate_set().count(lower_token) > 0) return true;
    return lower_token.find("n't") != std::string::npos;
}

std::optional<double> booster(const std::string& lower_token) {
    const auto& m = booster_map();
    const auto it = m.find(lower_token);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

std::optional<double> special_case(const std::string& lower_phrase) {
    const auto& m = special_case_map();
    const auto it = m.find(lower_phrase);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

}  // namespace corpuslens::sentiment::rules
