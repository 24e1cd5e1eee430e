#include "corpuslens/topics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "corpuslens/errors.hpp"
#include "corpuslens/text.hpp"
#include "corpuslens/util.hpp"

namespace corpuslens::topics {

using nlohmann::json;

namespace {

void normalize_rows(Eigen::MatrixXd& m, const std::vector<std::string>& ids) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        const double norm = m.row(r).norm();
        if (!std::isfinite(norm)) {
            throw DataError("embeddings: non-finite vector for doc '" +
                            ids[static_cast<std::size_t>(r)] + "'");
        }
        if (norm == 0.0) {
            throw DataError("embeddings: zero vector cannot be normalized (doc '" +
                            ids[static_cast<std::size_t>(r)] + "')");
        }
        m.row(r) /= norm;
    }
}

EmbeddingMatrix load_embeddings_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("embeddings: cannot read " + path.string());
    EmbeddingMatrix out;
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    Eigen::Index dim = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw DataError("embeddings: invalid JSON at line " + std::to_string(lineno) + ": " +
                            e.what());
        }
        if (!obj.contains("doc_id") || !obj["doc_id"].is_string() || !obj.contains("vector") ||
            !obj["vector"].is_array()) {
            throw DataError("embeddings: line " + std::to_string(lineno) +
                            " needs string doc_id and array vector");
        }
        std::vector<double> v;
        for (const auto& x : obj["vector"]) {
            if (!x.is_number()) {
                throw DataError("embeddings: non-numeric component at line " +
                                std::to_string(lineno));
            }
            v.push_back(x.get<double>());
        }
        if (dim < 0) dim = static_cast<Eigen::Index>(v.size());
        if (static_cast<Eigen::Index>(v.size()) != dim) {
            throw DataError("embeddings: dimension mismatch at line " + std::to_string(lineno));
        }
        out.doc_ids.push_back(obj["doc_id"].get<std::string>());
        rows.push_back(std::move(v));
    }
    if (rows.empty()) throw DataError("embeddings: no rows in " + path.string());
    out.vectors.resize(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            out.vectors(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)];
        }
    }
    normalize_rows(out.vectors, out.doc_ids);
    return out;
}

EmbeddingMatrix load_embeddings_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("embeddings: cannot read " + path.string());
    std::size_t n = 0;
    std::size_t d = 0;
    if (!(in >> n >> d) || n == 0 || d == 0) {
        throw DataError("embeddings: expected header 'n d' in " + path.string());
    }
    EmbeddingMatrix out;
    out.doc_ids.reserve(n);
    out.vectors.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (std::size_t r = 0; r < n; ++r) {
        std::string id;
        if (!(in >> id)) {
            throw DataError("embeddings: missing row " + std::to_string(r + 1) + " (header says " +
                            std::to_string(n) + " rows)");
        }
        out.doc_ids.push_back(id);
        for (std::size_t c = 0; c < d; ++c) {
            double v = 0.0;
            if (!(in >> v)) {
                throw DataError("embeddings: short row for doc '" + id + "'");
            }
            out.vectors(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
        }
    }
    std::string extra;
    if (in >> extra) {
        throw DataError("embeddings: more rows than the header announced in " + path.string());
    }
    normalize_rows(out.vectors, out.doc_ids);
    return out;
}

}  // namespace

EmbeddingMatrix load_embeddings(const std::filesystem::path& path) {
    if (path.extension() == ".jsonl") return load_embeddings_jsonl(path);
    std::ifstream probe(path);
    if (!probe) throw DataError("embeddings: cannot read " + path.string());
    char first = 0;
    probe >> first;
    probe.close();
    if (first == '{') return load_embeddings_jsonl(path);
    return load_embeddings_text(path);
}

FallbackEmbedding fallback_embed(const std::vector<std::string>& doc_ids,
                                 const std::vector<std::string>& texts, int dim,
                                 std::uint64_t seed) {
    if (doc_ids.size() != texts.size()) throw DataError("fallback_embed: ids/texts mismatch");
    if (dim < 8) throw DataError("fallback_embed: dim must be >= 8");

    std::vector<std::vector<std::string>> tokens(texts.size());
    std::unordered_map<std::string, std::size_t> doc_freq;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        tokens[i] = text::tokenize(texts[i]);
        std::map<std::string, int> seen;
        for (const auto& t : tokens[i]) seen.emplace(t, 1);
        for (const auto& [t, _] : seen) ++doc_freq[t];
    }
    const double n_docs = static_cast<double>(texts.size());

    FallbackEmbedding out;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        if (tokens[i].empty()) {
            out.skipped.push_back(doc_ids[i]);
        } else {
            kept.push_back(i);
        }
    }
    out.matrix.vectors = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(kept.size()), dim);
    out.matrix.doc_ids.reserve(kept.size());
    for (std::size_t r = 0; r < kept.size(); ++r) {
        const std::size_t i = kept[r];
        out.matrix.doc_ids.push_back(doc_ids[i]);
        std::map<std::string, std::size_t> tf;
        for (const auto& t : tokens[i]) ++tf[t];
        for (const auto& [t, count] : tf) {
            const double idf =
                std::log((1.0 + n_docs) / (1.0 + static_cast<double>(doc_freq[t]))) + 1.0;
            const auto bucket =
                static_cast<Eigen::Index>(util::hash64(t, seed) % static_cast<std::uint64_t>(dim));
            out.matrix.vectors(static_cast<Eigen::Index>(r), bucket) +=
                static_cast<double>(count) * idf;
        }
        const double norm = out.matrix.vectors.row(static_cast<Eigen::Index>(r)).norm();
        out.matrix.vectors.row(static_cast<Eigen::Index>(r)) /= norm;
    }
    return out;
}

Eigen::MatrixXd pca_reduce(const Eigen::MatrixXd& vectors, int components) {
    if (components < 1 || components >= vectors.cols()) return vectors;
    const Eigen::RowVectorXd mean = vectors.colwise().mean();
    const Eigen::MatrixXd centered = vectors.rowwise() - mean;
    const Eigen::MatrixXd cov =
        centered.transpose() * centered / std::max<double>(1.0, static_cast<double>(vectors.rows() - 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    // eigenvalues ascending; take the trailing `components` columns
    const Eigen::MatrixXd basis = solver.eigenvectors().rightCols(components).rowwise().reverse();
    return centered * basis;
}

std::vector<std::vector<WeightedTerm>> ctfidf_terms(
    const std::vector<std::vector<std::string>>& cluster_tokens, std::size_t top_k) {
    const std::size_t k = cluster_tokens.size();
    std::vector<std::vector<WeightedTerm>> out(k);
    if (k == 0 || top_k == 0) return out;

    std::unordered_map<std::string, double> corpus_tf;
    double total_tokens = 0.0;
    for (const auto& cluster : cluster_tokens) {
        for (const auto& t : cluster) {
            corpus_tf[t] += 1.0;
            total_tokens += 1.0;
        }
    }
    const double avg_tokens = total_tokens / static_cast<double>(k);

    for (std::size_t c = 0; c < k; ++c) {
        std::map<std::string, double> tf;
        for (const auto& t : cluster_tokens[c]) tf[t] += 1.0;
        std::vector<WeightedTerm> terms;
        terms.reserve(tf.size());
        for (const auto& [t, count] : tf) {
            const double w = count * std::log(1.0 + avg_tokens / corpus_tf[t]);
            terms.push_back({t, w});
        }
        std::sort(terms.begin(), terms.end(), [](const WeightedTerm& a, const WeightedTerm& b) {
            if (a.weight != b.weight) return a.weight > b.weight;
            return a.term < b.term;
        });
        if (terms.size() > top_k) terms.resize(top_k);
        out[c] = std::move(terms);
    }
    return out;
}

std::vector<TopicSentiment> topic_sentiment(const std::vector<int>& labels,
                                            const std::vector<double>& compounds) {
    if (labels.size() != compounds.size()) {
        throw DataError("topic_sentiment: labels/sentiments misaligned");
    }
    std::map<int, TopicSentiment> acc;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0) continue;
        auto& t = acc[labels[i]];
        t.topic_id = labels[i];
        t.n += 1;
        t.mean += compounds[i];
    }
    std::vector<TopicSentiment> out;
    out.reserve(acc.size());
    for (auto& [id, t] : acc) {
        t.mean /= static_cast<double>(t.n);
        out.push_back(t);
    }
    return out;
}

}  // namespace corpuslens::topics
