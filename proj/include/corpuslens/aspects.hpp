#ifndef CORPUSLENS_ASPECTS_HPP
#define CORPUSLENS_ASPECTS_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace corpuslens::aspects {

// aspect name -> keyword phrases (lowercase). Aspect names are the fixed
// nine; only the phrase lists are user-overridable.
using AspectLexicon = std::map<std::string, std::vector<std::string>>;

// The nine infrastructure aspects, in canonical reporting order.
const std::vector<std::string>& canonical_aspects();

// Built-in phrase seed; reproducible runs should prefer the JSON asset.
AspectLexicon default_aspect_lexicon();

// { "<aspect>": ["phrase", ...] }. Keys must be exactly the canonical nine.
AspectLexicon load_aspect_lexicon(const std::filesystem::path& path);

// Aspects whose phrases occur as contiguous token subsequences of the
// normalized text. Multi-assignment is expected; result follows canonical order.
std::vector<std::string> match_aspects(std::string_view text, const AspectLexicon& lexicon);

struct DocAspects {
    std::string doc_id;
    std::string region;            // "US" / "EU"
    std::vector<std::string> aspects;
    double compound = 0.0;
};

struct AspectSummaryRow {
    std::string region;
    std::string aspect;
    std::size_t n = 0;
    double mean = 0.0;
    double median = 0.0;
};

// Per region x aspect: count, mean and median compound. Empty cells are
// omitted; rows sorted by (region, canonical aspect order).
std::vector<AspectSummaryRow> aspect_summary(const std::vector<DocAspects>& docs);

// Median with the even-size convention (mean of the two middle order stats).
double median(std::vector<double> values);

}  // namespace corpuslens::aspects

#endif
