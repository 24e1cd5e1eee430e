#include "corpuslens/sentiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "corpuslens/errors.hpp"
#include "corpuslens/text.hpp"

namespace corpuslens::sentiment {

namespace rules {

namespace {

constexpr std::string_view kEdgePunct = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";

bool is_edge_punct(char c) { return kEdgePunct.find(c) != std::string_view::npos; }

std::string strip_punc_if_word(const std::string& token) {
    std::size_t begin = 0;
    std::size_t end = token.size();
    while (begin < end && is_edge_punct(token[begin])) ++begin;
    while (end > begin && is_edge_punct(token[end - 1])) --end;
    std::string stripped = token.substr(begin, end - begin);
    if (text::utf8_length(stripped) <= 2) return token;  // keep emoticons like ":)"
    return stripped;
}

}  // namespace

std::vector<std::string> words_and_emoticons(std::string_view text_in) {
    auto tokens = text::split_whitespace(text_in);
    for (auto& t : tokens) t = strip_punc_if_word(t);
    return tokens;
}

bool is_upper(std::string_view token) {
    bool has_upper = false;
    for (char c : token) {
        if (c >= 'a' && c <= 'z') return false;
        if (c >= 'A' && c <= 'Z') has_upper = true;
    }
    return has_upper;
}

bool allcap_differential(const std::vector<std::string>& tokens) {
    std::size_t allcap = 0;
    for (const auto& t : tokens) {
        if (is_upper(t)) ++allcap;
    }
    const std::size_t diff = tokens.size() - allcap;
    return diff > 0 && diff < tokens.size();
}

double normalize_score(double s) {
    const double norm = s / std::sqrt(s * s + kAlpha);
    return std::clamp(norm, -1.0, 1.0);
}

}  // namespace rules

namespace {

using rules::kBoosterIncr;
using rules::kCapsIncr;
using rules::kNegationScalar;

// booster increment contributed by `token` ahead of a valenced word
double scalar_inc_dec(const std::string& token, const std::string& lower, double valence,
                      bool is_cap_diff) {
    const auto b = rules::booster(lower);
    if (!b) return 0.0;
    double scalar = *b;
    if (valence < 0.0) scalar = -scalar;
    if (rules::is_upper(token) && is_cap_diff) {
        scalar += valence > 0.0 ? kCapsIncr : -kCapsIncr;
    }
    return scalar;
}

double negation_check(double valence, const std::vector<std::string>& lower, std::size_t start_i,
                      std::size_t i) {
    if (start_i == 0) {
        if (rules::is_negation(lower[i - 1])) valence *= kNegationScalar;
    }
    if (start_i == 1) {
        if (lower[i - 2] == "never" && (lower[i - 1] == "so" || lower[i - 1] == "this")) {
            valence *= 1.25;
        } else if (lower[i - 2] == "without" && lower[i - 1] == "doubt") {
            // explicit pass-through
        } else if (rules::is_negation(lower[i - 2])) {
            valence *= kNegationScalar;
        }
    }
    if (start_i == 2) {
        if ((lower[i - 3] == "never" && (lower[i - 2] == "so" || lower[i - 2] == "this")) ||
            (lower[i - 1] == "so" || lower[i - 1] == "this")) {
            valence *= 1.25;
        } else if (lower[i - 3] == "without" &&
                   (lower[i - 2] == "doubt" || lower[i - 1] == "doubt")) {
            // pass-through
        } else if (rules::is_negation(lower[i - 3])) {
            valence *= kNegationScalar;
        }
    }
    return valence;
}

double special_idioms_check(double valence, const std::vector<std::string>& lower, std::size_t i) {
    const auto join2 = [&](std::size_t a, std::size_t b) { return lower[a] + " " + lower[b]; };
    const auto join3 = [&](std::size_t a, std::size_t b, std::size_t c) {
        return lower[a] + " " + lower[b] + " " + lower[c];
    };
    const std::string onezero = join2(i - 1, i);
    const std::string twoonezero = join3(i - 2, i - 1, i);
    const std::string twoone = join2(i - 2, i - 1);
    const std::string threetwoone = join3(i - 3, i - 2, i - 1);
    const std::string threetwo = join2(i - 3, i - 2);

    for (const auto& seq : {onezero, twoonezero, twoone, threetwoone, threetwo}) {
        if (const auto v = rules::special_case(seq)) {
            valence = *v;
            break;
        }
    }
    if (lower.size() > i + 1) {
        if (const auto v = rules::special_case(join2(i, i + 1))) valence = *v;
    }
    if (lower.size() > i + 2) {
        if (const auto v = rules::special_case(join3(i, i + 1, i + 2))) valence = *v;
    }
    // trailing booster bigrams such as "sort of"
    for (const auto& gram : {threetwoone, threetwo, twoone}) {
        if (const auto b = rules::booster(gram)) valence += *b;
    }
    return valence;
}

double amplify_ep(std::string_view text_in) {
    // up to 3 exclamation points add emphasis
    long count = std::count(text_in.begin(), text_in.end(), '!');
    if (count > 3) count = 3;
    return static_cast<double>(count) * 0.292;
}

double amplify_qm(std::string_view text_in) {
    const long count = std::count(text_in.begin(), text_in.end(), '?');
    if (count > 1) {
        return count <= 3 ? static_cast<double>(count) * 0.18 : 0.96;
    }
    return 0.0;
}

// Clause reweighting around the first "but": earlier sentiments x0.5, later
// x1.5. Matches the reference's first-matching-value update order.
void but_check(const std::vector<std::string>& lower, std::vector<double>& sentiments) {
    const auto but_it = std::find(lower.begin(), lower.end(), "but");
    if (but_it == lower.end()) return;
    const std::size_t bi = static_cast<std::size_t>(but_it - lower.begin());
    for (std::size_t pos = 0; pos < sentiments.size(); ++pos) {
        const double value = sentiments[pos];
        const std::size_t si = static_cast<std::size_t>(
            std::find(sentiments.begin(), sentiments.end(), value) - sentiments.begin());
        if (si < bi) {
            sentiments[si] = value * 0.5;
        } else if (si > bi) {
            sentiments[si] = value * 1.5;
        }
    }
}

struct Sifted {
    double pos_sum = 0.0;
    double neg_sum = 0.0;
    std::size_t neu_count = 0;
};

Sifted sift(const std::vector<double>& sentiments) {
    Sifted out;
    for (double s : sentiments) {
        if (s > 0.0) out.pos_sum += s + 1.0;
        if (s < 0.0) out.neg_sum += s - 1.0;
        if (s == 0.0) ++out.neu_count;
    }
    return out;
}

}  // namespace

Lexicon Lexicon::load_tsv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("lexicon: cannot read " + path.string());
    Lexicon lex;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab1 = line.find('\t');
        if (tab1 == std::string::npos) {
            throw DataError("lexicon: missing value column at line " + std::to_string(lineno));
        }
        const auto tab2 = line.find('\t', tab1 + 1);
        const std::string token = text::to_lower(line.substr(0, tab1));
        const std::string value_str =
            line.substr(tab1 + 1, tab2 == std::string::npos ? std::string::npos : tab2 - tab1 - 1);
        double value = 0.0;
        try {
            value = std::stod(value_str);
        } catch (const std::exception&) {
            throw DataError("lexicon: bad valence at line " + std::to_string(lineno));
        }
        if (std::isnan(value)) {
            throw DataError("lexicon: NaN valence at line " + std::to_string(lineno));
        }
        lex.map_[token] = value;
    }
    return lex;
}

Lexicon Lexicon::from_pairs(const std::vector<std::pair<std::string, double>>& entries) {
    Lexicon lex;
    for (const auto& [token, value] : entries) lex.map_[text::to_lower(token)] = value;
    return lex;
}

std::string_view polarity_name(Polarity p) {
    switch (p) {
        case Polarity::Negative: return "negative";
        case Polarity::Positive: return "positive";
        case Polarity::Neutral: break;
    }
    return "neutral";
}

Polarity classify(double compound) {
    if (!(compound >= -1.0 && compound <= 1.0)) {
        throw NumericError("classify: compound outside [-1, 1]");
    }
    if (compound >= 0.05) return Polarity::Positive;
    if (compound <= -0.05) return Polarity::Negative;
    return Polarity::Neutral;
}

double SentimentAnalyzer::token_valence(const std::vector<std::string>& tokens,
                                        const std::vector<std::string>& lower, std::size_t i,
                                        bool is_cap_diff) const {
    const std::string& item_lower = lower[i];
    if (!lexicon_.contains(item_lower)) return 0.0;
    double valence = lexicon_.valence(item_lower);

    // "no" before a lexicon word negates it instead of scoring on its own
    if (item_lower == "no" && i + 1 < tokens.size() && lexicon_.contains(lower[i + 1])) {
        valence = 0.0;
    }
    if ((i > 0 && lower[i - 1] == "no") || (i > 1 && lower[i - 2] == "no") ||
        (i > 2 && lower[i - 3] == "no" && (lower[i - 1] == "or" || lower[i - 1] == "nor"))) {
        valence = lexicon_.valence(item_lower) * kNegationScalar;
    }

    if (rules::is_upper(tokens[i]) && is_cap_diff) {
        valence += valence > 0.0 ? kCapsIncr : -kCapsIncr;
    }

    for (std::size_t start_i = 0; start_i < 3; ++start_i) {
        if (i > start_i && !lexicon_.contains(lower[i - (start_i + 1)])) {
            double s = scalar_inc_dec(tokens[i - (start_i + 1)], lower[i - (start_i + 1)], valence,
                                      is_cap_diff);
            if (start_i == 1 && s != 0.0) s *= 0.95;
            if (start_i == 2 && s != 0.0) s *= 0.9;
            valence += s;
            valence = negation_check(valence, lower, start_i, i);
            if (start_i == 2) valence = special_idioms_check(valence, lower, i);
        }
    }

    // "least" as a negating qualifier ("at least" / "very least" excluded)
    if (i > 1 && !lexicon_.contains(lower[i - 1]) && lower[i - 1] == "least") {
        if (lower[i - 2] != "at" && lower[i - 2] != "very") valence *= kNegationScalar;
    } else if (i > 0 && !lexicon_.contains(lower[i - 1]) && lower[i - 1] == "least") {
        valence *= kNegationScalar;
    }
    return valence;
}

std::vector<double> SentimentAnalyzer::token_valences(const std::vector<std::string>& tokens,
                                                      bool is_cap_diff) const {
    std::vector<std::string> lower(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) lower[i] = text::to_lower(tokens[i]);

    std::vector<double> sentiments;
    sentiments.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        // boosters score 0 on their own; "kind of" likewise
        if ((i + 1 < tokens.size() && lower[i] == "kind" && lower[i + 1] == "of") ||
            rules::booster(lower[i])) {
            sentiments.push_back(0.0);
            continue;
        }
        sentiments.push_back(token_valence(tokens, lower, i, is_cap_diff));
    }
    but_check(lower, sentiments);
    return sentiments;
}

SentimentScore SentimentAnalyzer::polarity_scores(std::string_view text_in) const {
    // leading/trailing whitespace is irrelevant to splitting but mirrors the
    // reference's preprocessing
    std::string_view trimmed = text_in;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())) != 0) {
        trimmed.remove_prefix(1);
    }
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())) != 0) {
        trimmed.remove_suffix(1);
    }

    const auto tokens = rules::words_and_emoticons(trimmed);
    const bool is_cap_diff = rules::allcap_differential(tokens);
    const auto sentiments = token_valences(tokens, is_cap_diff);

    SentimentScore score;
    if (!sentiments.empty()) {
        double sum_s = 0.0;
        for (double s : sentiments) sum_s += s;
        const double punct = amplify_ep(trimmed) + amplify_qm(trimmed);
        if (sum_s > 0.0) {
            sum_s += punct;
        } else if (sum_s < 0.0) {
            sum_s -= punct;
        }
        score.compound = rules::normalize_score(sum_s);

        Sifted sifted = sift(sentiments);
        if (sifted.pos_sum > std::fabs(sifted.neg_sum)) {
            sifted.pos_sum += punct;
        } else if (sifted.pos_sum < std::fabs(sifted.neg_sum)) {
            sifted.neg_sum -= punct;
        }
        const double total =
            sifted.pos_sum + std::fabs(sifted.neg_sum) + static_cast<double>(sifted.neu_count);
        score.pos = std::fabs(sifted.pos_sum / total);
        score.neg = std::fabs(sifted.neg_sum / total);
        score.neu = std::fabs(static_cast<double>(sifted.neu_count) / total);
    }
    score.polarity = classify(score.compound);
    return score;
}

std::optional<double> mean_compound(std::span<const double> compounds) {
    if (compounds.empty()) return std::nullopt;
    double sum = 0.0;
    for (double c : compounds) sum += c;
    return sum / static_cast<double>(compounds.size());
}

}  // namespace corpuslens::sentiment
