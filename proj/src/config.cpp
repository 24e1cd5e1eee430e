#include "corpuslens/config.hpp"

#include <fstream>
#include <set>

#include "corpuslens/errors.hpp"

namespace corpuslens::config {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (known.count(key) == 0) {
            throw ConfigError("config: unknown key '" + key + "' in " + where);
        }
    }
}

template <typename T>
void read_if(const json& obj, const char* key, T& out) {
    if (const auto it = obj.find(key); it != obj.end() && !it->is_null()) {
        try {
            out = it->get<T>();
        } catch (const json::exception&) {
            throw ConfigError(std::string("config: bad value for '") + key + "'");
        }
    }
}

}  // namespace

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read " + path.string());
    json root;
    try {
        root = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config: invalid JSON: " + std::string(e.what()));
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown(root, {"paths", "thresholds", "topics", "flags"}, "top level");

    RunConfig cfg;
    if (root.contains("paths")) {
        const auto& p = root["paths"];
        reject_unknown(p,
                       {"posts", "comments", "geo_map", "lexicon", "aspect_lexicon", "embeddings",
                        "stopwords", "outdir"},
                       "paths");
        read_if(p, "posts", cfg.posts);
        read_if(p, "comments", cfg.comments);
        read_if(p, "geo_map", cfg.geo_map);
        read_if(p, "lexicon", cfg.lexicon);
        read_if(p, "aspect_lexicon", cfg.aspect_lexicon);
        read_if(p, "embeddings", cfg.embeddings);
        read_if(p, "stopwords", cfg.stopwords);
        read_if(p, "outdir", cfg.outdir);
    }
    if (root.contains("thresholds")) {
        const auto& t = root["thresholds"];
        reject_unknown(t, {"min_posts_state", "min_posts_country_plot", "min_comments_for_pair"},
                       "thresholds");
        read_if(t, "min_posts_state", cfg.min_posts_state);
        read_if(t, "min_posts_country_plot", cfg.min_posts_country_plot);
        read_if(t, "min_comments_for_pair", cfg.min_comments_for_pair);
    }
    if (root.contains("topics")) {
        const auto& t = root["topics"];
        reject_unknown(t, {"min_cluster_size", "min_samples", "top_k", "fallback_dim", "pca_dim"},
                       "topics");
        read_if(t, "min_cluster_size", cfg.min_cluster_size);
        read_if(t, "min_samples", cfg.min_samples);
        read_if(t, "top_k", cfg.top_k);
        read_if(t, "fallback_dim", cfg.fallback_dim);
        read_if(t, "pca_dim", cfg.pca_dim);
    }
    if (root.contains("flags")) {
        const auto& f = root["flags"];
        reject_unknown(f,
                       {"positive_threshold", "negative_threshold", "bins", "seed", "threads",
                        "wilcoxon_zeros", "continuity", "reml", "keywords"},
                       "flags");
        read_if(f, "positive_threshold", cfg.positive_threshold);
        read_if(f, "negative_threshold", cfg.negative_threshold);
        read_if(f, "bins", cfg.bins);
        read_if(f, "seed", cfg.seed);
        read_if(f, "threads", cfg.threads);
        read_if(f, "wilcoxon_zeros", cfg.wilcoxon_zeros);
        read_if(f, "continuity", cfg.continuity);
        read_if(f, "reml", cfg.reml);
        read_if(f, "keywords", cfg.keywords);
    }
    validate(cfg);
    return cfg;
}

json to_json(const RunConfig& cfg) {
    return json{
        {"paths",
         {{"posts", cfg.posts},
          {"comments", cfg.comments},
          {"geo_map", cfg.geo_map},
          {"lexicon", cfg.lexicon},
          {"aspect_lexicon", cfg.aspect_lexicon},
          {"embeddings", cfg.embeddings},
          {"stopwords", cfg.stopwords},
          {"outdir", cfg.outdir}}},
        {"thresholds",
         {{"min_posts_state", cfg.min_posts_state},
          {"min_posts_country_plot", cfg.min_posts_country_plot},
          {"min_comments_for_pair", cfg.min_comments_for_pair}}},
        {"topics",
         {{"min_cluster_size", cfg.min_cluster_size},
          {"min_samples", cfg.min_samples},
          {"top_k", cfg.top_k},
          {"fallback_dim", cfg.fallback_dim},
          {"pca_dim", cfg.pca_dim}}},
        {"flags",
         {{"positive_threshold", cfg.positive_threshold},
          {"negative_threshold", cfg.negative_threshold},
          {"bins", cfg.bins},
          {"seed", cfg.seed},
          {"threads", cfg.threads},
          {"wilcoxon_zeros", cfg.wilcoxon_zeros},
          {"continuity", cfg.continuity},
          {"reml", cfg.reml},
          {"keywords", cfg.keywords}}},
    };
}

void validate(const RunConfig& cfg) {
    if (cfg.min_posts_state < 1) throw ConfigError("config: min_posts_state must be >= 1");
    if (cfg.min_posts_country_plot < 1) {
        throw ConfigError("config: min_posts_country_plot must be >= 1");
    }
    if (cfg.min_comments_for_pair < 1) {
        throw ConfigError("config: min_comments_for_pair must be >= 1");
    }
    if (cfg.min_cluster_size < 2) throw ConfigError("config: min_cluster_size must be >= 2");
    if (cfg.min_samples < 0) throw ConfigError("config: min_samples must be >= 0");
    if (cfg.top_k < 0) throw ConfigError("config: top_k must be >= 0");
    if (cfg.fallback_dim < 8) throw ConfigError("config: fallback_dim must be >= 8");
    if (cfg.pca_dim < 0) throw ConfigError("config: pca_dim must be >= 0");
    if (cfg.bins < 1) throw ConfigError("config: bins must be >= 1");
    if (cfg.positive_threshold < -1.0 || cfg.positive_threshold > 1.0 ||
        cfg.negative_threshold < -1.0 || cfg.negative_threshold > 1.0 ||
        cfg.negative_threshold > cfg.positive_threshold) {
        throw ConfigError("config: polarity thresholds must satisfy -1 <= neg <= pos <= 1");
    }
    if (cfg.wilcoxon_zeros != "drop" && cfg.wilcoxon_zeros != "pratt") {
        throw ConfigError("config: wilcoxon_zeros must be 'drop' or 'pratt'");
    }
    if (cfg.outdir.empty()) throw ConfigError("config: outdir must be set");
}

std::filesystem::path default_asset_dir() {
#ifdef CORPUSLENS_DEFAULT_ASSET_DIR
    return std::filesystem::path(CORPUSLENS_DEFAULT_ASSET_DIR);
#else
    return std::filesystem::path("assets");
#endif
}

}  // namespace corpuslens::config
