#ifndef CORPUSLENS_CONFIG_HPP
#define CORPUSLENS_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace corpuslens::config {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunConfig {
    // paths
    std::string posts;
    std::string comments;
    std::string geo_map;
    std::string lexicon;          // sentiment lexicon TSV
    std::string aspect_lexicon;   // empty -> built-in default
    std::string embeddings;       // empty -> deterministic fallback embedder
    std::string stopwords;
    std::string outdir = "out";

    // thresholds
    int min_posts_state = 30;
    int min_posts_country_plot = 100;
    int min_comments_for_pair = 1;

    // topic parameters
    int min_cluster_size = 15;
    int min_samples = 0;  // 0 -> min_cluster_size
    int top_k = 10;
    int fallback_dim = 256;
    int pca_dim = 0;  // 0 = no projection

    // flags
    double positive_threshold = 0.05;
    double negative_threshold = -0.05;
    int bins = 40;
    std::uint64_t seed = 12345;
    unsigned threads = 0;  // 0 -> CORPUS_LENS_THREADS env or hardware
    std::string wilcoxon_zeros = "drop";  // "drop" | "pratt"
    bool continuity = true;
    bool reml = true;
    std::vector<std::string> keywords;  // optional ingest keyword filter
};

// Reads a config JSON; unknown keys are rejected so typos do not silently
// fall back to defaults.
RunConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const RunConfig& cfg);

// Basic sanity (ranges, enums). File existence is checked per stage.
void validate(const RunConfig& cfg);

// Compiled-in asset directory (lexicon/stopwords/aspect lexicon defaults).
std::filesystem::path default_asset_dir();

}  // namespace corpuslens::config

#endif
