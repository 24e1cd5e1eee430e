#ifndef CORPUSLENS_SENTIMENT_HPP
#define CORPUSLENS_SENTIMENT_HPP

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace corpuslens::sentiment {

// Token valences, case-insensitive lookup. File format is the standard
// 4-column lexicon TSV: token <TAB> mean valence <TAB> stddev <TAB> ratings
// (the last two columns are parsed and ignored).
class Lexicon {
  public:
    static Lexicon load_tsv(const std::filesystem::path& path);
    static Lexicon from_pairs(const std::vector<std::pair<std::string, double>>& entries);

    bool contains(const std::string& lower_token) const {
        return map_.find(lower_token) != map_.end();
    }
    double valence(const std::string& lower_token) const {
        const auto it = map_.find(lower_token);
        return it == map_.end() ? 0.0 : it->second;
    }
    std::size_t size() const { return map_.size(); }

  private:
    std::unordered_map<std::string, double> map_;
};

enum class Polarity { Negative, Neutral, Positive };

std::string_view polarity_name(Polarity p);

struct SentimentScore {
    double neg = 0.0;
    double neu = 0.0;
    double pos = 0.0;
    double compound = 0.0;
    Polarity polarity = Polarity::Neutral;
};

// compound >= +0.05 -> Positive, <= -0.05 -> Negative, else Neutral
// (boundaries inclusive). Throws NumericError outside [-1, 1].
Polarity classify(double compound);

// Rule-based valence scorer: token valences summed with negation lookback,
// booster/dampener increments, ALL-CAPS emphasis, exclamation/question-mark
// amplification and "but" clause reweighting, normalized by s/sqrt(s^2+15).
// Pure and reentrant; score documents in parallel freely.
class SentimentAnalyzer {
  public:
    explicit SentimentAnalyzer(Lexicon lexicon) : lexicon_(std::move(lexicon)) {}

    SentimentScore polarity_scores(std::string_view text) const;

    const Lexicon& lexicon() const { return lexicon_; }

  private:
    std::vector<double> token_valences(const std::vector<std::string>& tokens,
                                       bool is_cap_diff) const;
    double token_valence(const std::vector<std::string>& tokens,
                         const std::vector<std::string>& lower, std::size_t i,
                         bool is_cap_diff) const;
    Lexicon lexicon_;
};

// Arithmetic mean of comment compounds; empty -> nullopt (threads without
// comments are excluded from the paired analyses).
std::optional<double> mean_compound(std::span<const double> compounds);

namespace rules {
// Reference rule constants.
inline constexpr double kBoosterIncr = 0.293;
inline constexpr double kBoosterDecr = -0.293;
inline constexpr double kCapsIncr = 0.733;
inline constexpr double kNegationScalar = -0.74;
inline constexpr double kAlpha = 15.0;

bool is_negation(const std::string& lower_token);
// booster increment for token (0 when not a booster)
std::optional<double> booster(const std::string& lower_token);
std::optional<double> special_case(const std::string& lower_phrase);

// whitespace-split tokens with edge punctuation stripped unless the stripped
// form would be <= 2 codepoints (protects emoticons)
std::vector<std::string> words_and_emoticons(std::string_view text);
// true when some but not all tokens are ALL-CAPS
bool allcap_differential(const std::vector<std::string>& tokens);
bool is_upper(std::string_view token);
double normalize_score(double s);
}  // namespace rules

}  // namespace corpuslens::sentiment

#endif
