#ifndef CORPUSLENS_TOPICS_HPP
#define CORPUSLENS_TOPICS_HPP

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "corpuslens/hdbscan.hpp"

namespace corpuslens::topics {

struct EmbeddingMatrix {
    std::vector<std::string> doc_ids;
    Eigen::MatrixXd vectors;  // rows aligned with doc_ids, L2-normalized
};

// Two on-disk layouts, both documented in the README:
//  - text: header "n d", then one line per row: doc_id v1 ... vd
//  - jsonl: {"doc_id": ..., "vector": [...]} per line (detected by extension
//    .jsonl or a leading '{')
// Rows are validated (consistent dimension, finite, nonzero) and normalized;
// errors name the offending row.
EmbeddingMatrix load_embeddings(const std::filesystem::path& path);

struct FallbackEmbedding {
    EmbeddingMatrix matrix;
    std::vector<std::string> skipped;  // docs with no tokens (zero vectors)
};

// Deterministic hashed bag-of-words: token -> hash(token, seed) mod dim,
// TF-IDF weighted, L2-normalized. Test/plumbing stand-in for real sentence
// embeddings; dim must be >= 8.
FallbackEmbedding fallback_embed(const std::vector<std::string>& doc_ids,
                                 const std::vector<std::string>& texts, int dim,
                                 std::uint64_t seed);

// Optional linear projection to the top principal components (parity
// experiments only; off by default in the pipeline).
Eigen::MatrixXd pca_reduce(const Eigen::MatrixXd& vectors, int components);

struct WeightedTerm {
    std::string term;
    double weight = 0.0;
};

// Class-based TF-IDF: weight(t,c) = tf(t,c) * log(1 + A / tf(t)) with A the
// average token count per cluster and tf(t) the corpus count. Top_k terms per
// cluster, descending weight, ties broken lexicographically.
std::vector<std::vector<WeightedTerm>> ctfidf_terms(
    const std::vector<std::vector<std::string>>& cluster_tokens, std::size_t top_k);

struct TopicSentiment {
    int topic_id = 0;
    std::size_t n = 0;
    double mean = 0.0;
};

// Per-topic count and mean compound; noise (-1) excluded.
std::vector<TopicSentiment> topic_sentiment(const std::vector<int>& labels,
                                            const std::vector<double>& compounds);

}  // namespace corpuslens::topics

#endif
