#include "corpuslens/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "corpuslens/aspects.hpp"
#include "corpuslens/corpus.hpp"
#include "corpuslens/errors.hpp"
#include "corpuslens/lmm.hpp"
#include "corpuslens/report.hpp"
#include "corpuslens/sentiment.hpp"
#include "corpuslens/stats.hpp"
#include "corpuslens/text.hpp"
#include "corpuslens/topics.hpp"
#include "corpuslens/util.hpp"

namespace corpuslens::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view stage_name(Stage stage) {
    switch (stage) {
        case Stage::Ingest: return "ingest";
        case Stage::Sentiment: return "sentiment";
        case Stage::Aspects: return "aspects";
        case Stage::Topics: return "topics";
        case Stage::Stats: return "stats";
        case Stage::Lmm: return "lmm";
        case Stage::Report: break;
    }
    return "report";
}

std::optional<Stage> parse_stage(std::string_view name) {
    for (const Stage s : {Stage::Ingest, Stage::Sentiment, Stage::Aspects, Stage::Topics,
                          Stage::Stats, Stage::Lmm, Stage::Report}) {
        if (stage_name(s) == name) return s;
    }
    return std::nullopt;
}

namespace {

void require_artifact(const fs::path& outdir, const std::string& rel, Stage producer) {
    if (!fs::exists(outdir / rel)) {
        throw DataError("missing artifact '" + rel + "': run `corpuslens " +
                        std::string(stage_name(producer)) + "` first");
    }
}

fs::path input_path(const std::string& p, const char* what) {
    if (p.empty()) throw ConfigError(std::string("config: path for ") + what + " is not set");
    if (!fs::exists(p)) {
        throw ConfigError(std::string("config: ") + what + " file not found: " + p);
    }
    return fs::path(p);
}

sentiment::Polarity classify_with(double compound, const config::RunConfig& cfg) {
    if (compound >= cfg.positive_threshold) return sentiment::Polarity::Positive;
    if (compound <= cfg.negative_threshold) return sentiment::Polarity::Negative;
    return sentiment::Polarity::Neutral;
}

// ---- artifact records -------------------------------------------------

struct GeoRec {
    std::string region;
    std::string unit;
    std::string city;
};

struct ScoreRec {
    std::string kind;  // "post" | "comment"
    double compound = 0.0;
};

std::vector<corpus::Post> load_stage_posts(const fs::path& outdir) {
    const auto res = corpus::load_posts(outdir / "ingest/posts.jsonl");
    if (!res.rejects.empty()) {
        throw DataError("ingest/posts.jsonl is corrupted; rerun `corpuslens ingest`");
    }
    return res.posts;
}

std::vector<corpus::Comment> load_stage_comments(const fs::path& outdir) {
    const auto res = corpus::load_comments(outdir / "ingest/comments.jsonl");
    if (!res.rejects.empty()) {
        throw DataError("ingest/comments.jsonl is corrupted; rerun `corpuslens ingest`");
    }
    return res.comments;
}

std::map<std::string, std::vector<std::string>> load_threads(const fs::path& outdir) {
    std::ifstream in(outdir / "ingest/threads.jsonl");
    if (!in) throw DataError("cannot read ingest/threads.jsonl");
    std::map<std::string, std::vector<std::string>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json obj = json::parse(line);
        out[obj.at("post_id").get<std::string>()] =
            obj.at("comment_ids").get<std::vector<std::string>>();
    }
    return out;
}

std::map<std::string, GeoRec> load_geo(const fs::path& outdir) {
    std::ifstream in(outdir / "ingest/geo.jsonl");
    if (!in) throw DataError("cannot read ingest/geo.jsonl");
    std::map<std::string, GeoRec> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json obj = json::parse(line);
        out[obj.at("doc_id").get<std::string>()] = {obj.at("region").get<std::string>(),
                                                    obj.at("unit").get<std::string>(),
                                                    obj.value("city", std::string())};
    }
    return out;
}

std::map<std::string, ScoreRec> load_scores(const fs::path& outdir) {
    std::ifstream in(outdir / "sentiment/scores.jsonl");
    if (!in) throw DataError("cannot read sentiment/scores.jsonl");
    std::map<std::string, ScoreRec> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json obj = json::parse(line);
        out[obj.at("doc_id").get<std::string>()] = {obj.at("kind").get<std::string>(),
                                                    obj.at("compound").get<double>()};
    }
    return out;
}

json test_result_json(const stats::TestResult& r) {
    json out{{"method", r.method},
             {"statistic", r.statistic},
             {"p", r.p_value},
             {"degenerate", r.degenerate},
             {"notes", r.notes}};
    out["effect"] = r.effect_size ? json(*r.effect_size) : json(nullptr);
    if (r.n.size() == 1) out["n1"] = r.n[0];
    if (r.n.size() == 2) {
        out["n1"] = r.n[0];
        out["n2"] = r.n[1];
    }
    if (r.n.size() >= 3 || r.method == "kruskal_wallis") {
        out["k"] = r.n.size();
        std::size_t total = 0;
        for (const auto v : r.n) total += v;
        out["N"] = total;
    }
    out["ties"] = {{"groups", r.ties.groups},
                   {"max_group", r.ties.max_group},
                   {"correction", r.ties.correction}};
    return out;
}

void write_json(const fs::path& path, const json& value) {
    util::write_file(path, value.dump(2) + "\n");
}

// Paired (post compound, mean comment compound) rows grouped by a key.
struct PairedRows {
    std::vector<double> post;
    std::vector<double> comment_mean;
};

// ---- stage: ingest ----------------------------------------------------

void run_ingest(const config::RunConfig& cfg) {
    const fs::path out(cfg.outdir);
    const auto posts_path = input_path(cfg.posts, "posts");
    const auto comments_path = input_path(cfg.comments, "comments");
    const auto geo_path = input_path(cfg.geo_map, "geo_map");

    auto posts_res = corpus::load_posts(posts_path);
    auto comments_res = corpus::load_comments(comments_path);
    const auto geo_map = corpus::load_geo_map(geo_path);

    std::size_t posts_before_filter = posts_res.posts.size();
    if (!cfg.keywords.empty()) {
        posts_res.posts = corpus::keyword_filter(posts_res.posts, cfg.keywords);
    }

    auto linked = corpus::link_threads(posts_res.posts, comments_res.comments);

    std::string posts_body;
    std::string geo_body;
    std::size_t unmapped = 0;
    for (const auto& t : linked.threads) {
        const auto& p = t.post;
        json obj{{"id", p.id},
                 {"subreddit", p.subreddit},
                 {"title", p.title},
                 {"selftext", p.selftext},
                 {"author", p.author},
                 {"created_utc", p.created_utc},
                 {"num_comments", p.num_comments},
                 {"score", p.score},
                 {"upvote_ratio", p.upvote_ratio}};
        if (!p.source_link.empty()) obj["permalink"] = p.source_link;
        posts_body += obj.dump() + "\n";
        const auto git = geo_map.find(p.subreddit);
        if (git == geo_map.end()) {
            ++unmapped;
        } else {
            const json grec{{"doc_id", p.id},
                            {"region", std::string(corpus::region_name(git->second.region))},
                            {"unit", git->second.unit},
                            {"city", git->second.city}};
            geo_body += grec.dump() + "\n";
        }
    }
    util::write_file(out / "ingest/posts.jsonl", posts_body);
    util::write_file(out / "ingest/geo.jsonl", geo_body);

    std::string comments_body;
    std::string threads_body;
    std::string orphans_body;
    for (const auto& t : linked.threads) {
        std::vector<std::string> ids;
        for (const auto& c : t.comments) {
            ids.push_back(c.comment_id);
            comments_body += json{{"comment_id", c.comment_id}, {"parent_id", c.parent_id},
                                  {"body", c.body},           {"author", c.author},
                                  {"created_utc", c.created_utc}, {"score", c.score}}
                                 .dump() +
                             "\n";
        }
        threads_body += json{{"post_id", t.post.id}, {"comment_ids", ids}}.dump() + "\n";
    }
    for (const auto& c : linked.orphans) {
        orphans_body += json{{"comment_id", c.comment_id}, {"parent_id", c.parent_id},
                             {"body", c.body},           {"author", c.author},
                             {"created_utc", c.created_utc}, {"score", c.score}}
                            .dump() +
                        "\n";
    }
    util::write_file(out / "ingest/comments.jsonl", comments_body);
    util::write_file(out / "ingest/threads.jsonl", threads_body);
    util::write_file(out / "ingest/orphans.jsonl", orphans_body);

    std::string rejects_body;
    for (const auto& r : posts_res.rejects) {
        rejects_body +=
            json{{"file", r.file}, {"line", r.line}, {"reason", r.reason}}.dump() + "\n";
    }
    for (const auto& r : comments_res.rejects) {
        rejects_body +=
            json{{"file", r.file}, {"line", r.line}, {"reason", r.reason}}.dump() + "\n";
    }
    util::write_file(out / "ingest/rejects.jsonl", rejects_body);

    std::size_t attached = 0;
    for (const auto& t : linked.threads) attached += t.comments.size();
    const json stats_obj{{"posts_total_lines", posts_res.total_lines},
                         {"posts_parsed", posts_before_filter},
                         {"posts_duplicates", posts_res.duplicates},
                         {"posts_rejects", posts_res.rejects.size()},
                         {"posts_after_keyword_filter", posts_res.posts.size()},
                         {"keyword_filter_applied", !cfg.keywords.empty()},
                         {"comments_total_lines", comments_res.total_lines},
                         {"comments_parsed", comments_res.comments.size()},
                         {"comments_duplicates", comments_res.duplicates},
                         {"comments_rejects", comments_res.rejects.size()},
                         {"comments_attached", attached},
                         {"orphans", linked.orphans.size()},
                         {"threads", linked.threads.size()},
                         {"unmapped_posts", unmapped}};
    write_json(out / "ingest/ingest_stats.json", stats_obj);
}

// ---- stage: sentiment ---------------------------------------------------

void run_sentiment(const config::RunConfig& cfg) {
    const fs::path out(cfg.outdir);
    require_artifact(out, "ingest/posts.jsonl", Stage::Ingest);
    require_artifact(out, "ingest/comments.jsonl", Stage::Ingest);

    const auto lexicon = sentiment::Lexicon::load_tsv(input_path(cfg.lexicon, "lexicon"));
    const sentiment::SentimentAnalyzer analyzer(lexicon);

    const auto posts = load_stage_posts(out);
    const auto comments = load_stage_comments(out);

    std::vector<sentiment::SentimentScore> post_scores(posts.size());
    util::parallel_for(posts.size(), cfg.threads, [&](std::size_t i) {
        post_scores[i] = analyzer.polarity_scores(corpus::analysis_text(posts[i]));
    });
    std::vector<sentiment::SentimentScore> comment_scores(comments.size());
    util::parallel_for(comments.size(), cfg.threads, [&](std::size_t i) {
        comment_scores[i] = analyzer.polarity_scores(comments[i].body);
    });

    std::string body;
    const auto emit = [&](const std::string& id, const char* kind,
                          const sentiment::SentimentScore& s) {
        const json obj{{"doc_id", id},
                       {"kind", kind},
                       {"neg", s.neg},
                       {"neu", s.neu},
                       {"pos", s.pos},
                       {"compound", s.compound},
                       {"polarity", std::string(sentiment::polarity_name(
                                        classify_with(s.compound, cfg)))}};
        body += obj.dump() + "\n";
    };
    for (std::size_t i = 0; i < posts.size(); ++i) emit(posts[i].id, "post", post_scores[i]);
    for (std::size_t i = 0; i < comments.size(); ++i) {
        emit(comments[i].comment_id, "comment", comment_scores[i]);
    }
    util::write_file(out / "sentiment/scores.jsonl", body);
}

// ---- stage: aspects -----------------------------------------------------

void run_aspects(const config::RunConfig& cfg) {
    const fs::path out(cfg.outdir);
    require_artifact(out, "ingest/posts.jsonl", Stage::Ingest);
    require_artifact(out, "sentiment/scores.jsonl", Stage::Sentiment);

    const auto lexicon = cfg.aspect_lexicon.empty()
                             ? aspects::default_aspect_lexicon()
                             : aspects::load_aspect_lexicon(
                                   input_path(cfg.aspect_lexicon, "aspect_lexicon"));
    const auto posts = load_stage_posts(out);
    const auto geo = load_geo(out);
    const auto scores = load_scores(out);

    std::vector<std::vector<std::string>> matched(posts.size());
    util::parallel_for(posts.size(), cfg.threads, [&](std::size_t i) {
        matched[i] = aspects::match_aspects(corpus::analysis_text(posts[i]), lexicon);
    });

    std::string body;
    std::vector<aspects::DocAspects> rows;
    for (std::size_t i = 0; i < posts.size(); ++i) {
        body += json{{"doc_id", posts[i].id}, {"aspects", matched[i]}}.dump() + "\n";
        const auto git = geo.find(posts[i].id);
        const auto sit = scores.find(posts[i].id);
        if (git == geo.end() || sit == scores.end()) continue;
        rows.push_back({posts[i].id, git->second.region, matched[i], sit->second.compound});
    }
    util::write_file(out / "aspects/assignments.jsonl", body);

    const auto summary = aspects::aspect_summary(rows);
    std::vector<std::vector<std::string>> csv_rows;
    for (const auto& r : summary) {
        csv_rows.push_back({r.region, r.aspect, std::to_string(r.n),
                            util::format_fixed(r.mean, 6), util::format_fixed(r.median, 6)});
    }
    report::write_csv(out / "aspect_summary.csv", {"region", "aspect", "n", "mean", "median"},
                      csv_rows);
}

// ---- stage: topics --------------------------------------------------------

void run_topics(const config::RunConfig& cfg) {
    const fs::path out(cfg.outdir);
    require_artifact(out, "ingest/posts.jsonl", Stage::Ingest);
    require_artifact(out, "sentiment/scores.jsonl", Stage::Sentiment);

    const auto posts = load_stage_posts(out);
    const auto geo = load_geo(out);
    const auto scores = load_scores(out);
    const auto stopwords = report::load_stopwords(input_path(cfg.stopwords, "stopwords"));

    std::map<std::string, std::string> post_text;
    for (const auto& p : posts) post_text[p.id] = corpus::analysis_text(p);

    // embeddings: user-supplied file or the deterministic fallback embedder
    topics::EmbeddingMatrix all_emb;
    std::set<std::string> skipped;
    if (!cfg.embeddings.empty()) {
        all_emb = topics::load_embeddings(input_path(cfg.embeddings, "embeddings"));
    } else {
        std::vector<std::string> ids;
        std::vector<std::string> texts;
        for (const auto& p : posts) {
            ids.push_back(p.id);
            texts.push_back(post_text[p.id]);
        }
        auto fb = topics::fallback_embed(ids, texts, cfg.fallback_dim, cfg.seed);
        all_emb = std::move(fb.matrix);
        skipped.insert(fb.skipped.begin(), fb.skipped.end());
    }
    std::map<std::string, Eigen::Index> emb_row;
    for (std::size_t i = 0; i < all_emb.doc_ids.size(); ++i) {
        emb_row[all_emb.doc_ids[i]] = static_cast<Eigen::Index>(i);
    }

    json topics_out = json::object();
    for (const std::string region : {"EU", "US"}) {
        // clustering is always per region
        std::vector<std::string> ids;
        for (const auto& p : posts) {
            const auto git = geo.find(p.id);
            if (git == geo.end() || git->second.region != region) continue;
            if (emb_row.find(p.id) == emb_row.end()) continue;
            ids.push_back(p.id);
        }
        json region_topics = json::array();
        std::string labels_body;
        if (static_cast<int>(ids.size()) >= cfg.min_cluster_size) {
            Eigen::MatrixXd m(static_cast<Eigen::Index>(ids.size()), all_emb.vectors.cols());
            for (std::size_t i = 0; i < ids.size(); ++i) {
                m.row(static_cast<Eigen::Index>(i)) = all_emb.vectors.row(emb_row[ids[i]]);
            }
            if (cfg.pca_dim > 0) m = topics::pca_reduce(m, cfg.pca_dim);

            hdbscan::Params params;
            params.min_cluster_size = cfg.min_cluster_size;
            params.min_samples = cfg.min_samples;
            const auto clu = hdbscan::run(m, params, cfg.threads);

            std::vector<double> compounds(ids.size(), 0.0);
            for (std::size_t i = 0; i < ids.size(); ++i) {
                const auto sit = scores.find(ids[i]);
                compounds[i] = sit != scores.end() ? sit->second.compound : 0.0;
            }
            const auto senti = topics::topic_sentiment(clu.labels, compounds);

            std::vector<std::vector<std::string>> cluster_tokens(
                static_cast<std::size_t>(clu.n_clusters));
            for (std::size_t i = 0; i < ids.size(); ++i) {
                if (clu.labels[i] < 0) continue;
                for (auto& tok : text::tokenize(post_text[ids[i]])) {
                    if (text::utf8_length(tok) < 2 || stopwords.count(tok) > 0) continue;
                    cluster_tokens[static_cast<std::size_t>(clu.labels[i])].push_back(
                        std::move(tok));
                }
            }
            const auto terms = topics::ctfidf_terms(cluster_tokens,
                                                    static_cast<std::size_t>(cfg.top_k));

            for (const auto& ts : senti) {
                json tj{{"topic_id", ts.topic_id}, {"n", ts.n}, {"mean_sentiment", ts.mean}};
                json term_list = json::array();
                for (const auto& wt : terms[static_cast<std::size_t>(ts.topic_id)]) {
                    term_list.push_back({{"term", wt.term}, {"weight", wt.weight}});
                }
                tj["terms"] = std::move(term_list);
                region_topics.push_back(std::move(tj));
            }
            for (std::size_t i = 0; i < ids.size(); ++i) {
                labels_body +=
                    json{{"doc_id", ids[i]}, {"label", clu.labels[i]}}.dump() + "\n";
            }
        }
        // docs skipped for empty text are noise by definition
        for (const auto& p : posts) {
            const auto git = geo.find(p.id);
            if (git == geo.end() || git->second.region != region) continue;
            if (skipped.count(p.id) > 0) {
                labels_body += json{{"doc_id", p.id}, {"label", -1}}.dump() + "\n";
            }
        }
        topics_out[region] = std::move(region_topics);
        util::write_file(out / ("topics/labels_" + region + ".jsonl"), labels_body);
    }
    write_json(out / "topics.json", topics_out);
}

// ---- stage: stats ----------------------------------------------------------

PairedRows paired_rows(const std::vector<corpus::Post>& posts,
                       const std::map<std::string, std::vector<std::string>>& threads,
                       const std::map<std::string, ScoreRec>& scores, int min_comments,
                       const std::map<std::string, GeoRec>& geo, const std::string& region,
                       const std::string& unit) {
    PairedRows rows;
    for (const auto& p : posts) {
        const auto git = geo.find(p.id);
        if (git == geo.end()) continue;
        if (!region.empty() && git->second.region != region) continue;
        if (!unit.empty() && git->second.unit != unit) continue;
        const auto tit = threads.find(p.id);
        if (tit == threads.end() ||
            static_cast<int>(tit->second.size()) < std::max(1, min_comments)) {
            continue;
        }
        const auto sit = scores.find(p.id);
        if (sit == scores.end()) continue;
        std::vector<double> cc;
        for (const auto& cid : tit->second) {
            const auto cs = scores.find(cid);
            if (cs != scores.end()) cc.push_back(cs->second.compound);
        }
        const auto mean = sentiment::mean_compound(cc);
        if (!mean) continue;
        rows.post.push_back(sit->second.compound);
        rows.comment_mean.push_back(*mean);
    }
    return rows;
}

// group post compounds by unit within a region, keeping groups >= min_n
std::vector<std::pair<std::string, std::vector<double>>> unit_groups(
    const std::vector<corpus::Post>& posts, const std::map<std::string, ScoreRec>& scores,
    const std::map<std::string, GeoRec>& geo, const std::string& region, std::size_t min_n) {
    std::map<std::string, std::vector<double>> by_unit;
    for (const auto& p : posts) {
        const auto git = geo.find(p.id);
        if (git == geo.end() || git->second.region != region) continue;
        const auto sit = scores.find(p.id);
        if (sit == scores.end()) continue;
        by_unit[git->second.unit].push_back(sit->second.compound);
    }
    std::map<std::string, std::size_t> sizes;
    for (const auto& [unit, vals] : by_unit) sizes[unit] = vals.size();
    std::vector<std::pair<std::string, std::vector<double>>> out;
    for (const auto& unit : corpus::min_count_filter(sizes, min_n)) {
        out.emplace_back(unit, std::move(by_unit[unit]));
    }
    return out;
}

void write_dunn_csv(const fs::path& path, const stats::PairwiseMatrix& m) {
    std::vector<std::string> header = {"unit"};
    header.insert(header.end(), m.names.begin(), m.names.end());
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < m.names.size(); ++i) {
        std::vector<std::string> row = {m.names[i]};
        for (std::size_t j = 0; j < m.names.size(); ++j) {
            row.push_back(util::format_full(m.p_adj[i][j]));
        }
        rows.push_back(std::move(row));
    }
    report::write_csv(path, header, rows);
}

void run_stats(const config::RunConfig& cfg) {
    const fs::path out(cfg.outdir);
    require_artifact(out, "ingest/posts.jsonl", Stage::Ingest);
    require_artifact(out, "sentiment/scores.jsonl", Stage::Sentiment);

    const auto posts = load_stage_posts(out);
    const auto threads = load_threads(out);
    const auto geo = load_geo(out);
    const auto scores = load_scores(out);
    const auto zeros = cfg.wilcoxon_zeros == "pratt" ? stats::ZeroPolicy::Pratt
                                                     : stats::ZeroPolicy::Drop;

    std::vector<double> us_posts;
    std::vector<double> eu_posts;
    for (const auto& p : posts) {
        const auto git = geo.find(p.id);
        const auto sit = scores.find(p.id);
        if (git == geo.end() || sit == scores.end()) continue;
        (git->second.region == "US" ? us_posts : eu_posts).push_back(sit->second.compound);
    }

    if (!us_posts.empty() && !eu_posts.empty()) {
        auto mwu = stats::mann_whitney_u(us_posts, eu_posts, cfg.continuity);
        json j = test_result_json(mwu);
        j["x"] = "US posts";
        j["y"] = "EU posts";
        write_json(out / "tests/mann_whitney_posts.json", j);

        auto ks = stats::ks_two_sample(us_posts, eu_posts);
        json kj = test_result_json(ks);
        kj["x"] = "US posts";
        kj["y"] = "EU posts";
        write_json(out / "tests/ks_posts.json", kj);
    }

    // paired post-vs-comment shifts, regional then per unit with BH-FDR
    for (const std::string region : {"US", "EU"}) {
        const auto rows =
            paired_rows(posts, threads, scores, cfg.min_comments_for_pair, geo, region, "");
        json j;
        if (rows.post.empty()) {
            j = json{{"method", "wilcoxon_signed_rank"}, {"error", "no paired observations"}};
        } else {
            try {
                const auto w = stats::wilcoxon_signed_rank(rows.post, rows.comment_mean, zeros,
                                                           cfg.continuity);
                j = test_result_json(w);
                j["n_pairs"] = rows.post.size();
                j["median_post"] = aspects::median(rows.post);
                j["median_comment"] = aspects::median(rows.comment_mean);
            } catch (const NumericError& e) {
                j = json{{"method", "wilcoxon_signed_rank"}, {"error", e.what()}};
            }
        }
        write_json(out / ("tests/wilcoxon_paired_" + region + ".json"), j);
    }

    for (const std::string region : {"US", "EU"}) {
        std::set<std::string> units;
        for (const auto& [id, g] : geo) {
            if (g.region == region) units.insert(g.unit);
        }
        json rows_out = json::array();
        std::vector<double> pvals;
        std::vector<std::size_t> pval_row;
        std::size_t row_idx = 0;
        for (const auto& unit : units) {
            const auto rows =
                paired_rows(posts, threads, scores, cfg.min_comments_for_pair, geo, region, unit);
            if (rows.post.empty()) continue;
            json j{{"unit", unit}, {"n_pairs", rows.post.size()}};
            j["median_post"] = aspects::median(rows.post);
            j["median_comment"] = aspects::median(rows.comment_mean);
            try {
                const auto w = stats::wilcoxon_signed_rank(rows.post, rows.comment_mean, zeros,
                                                           cfg.continuity);
                j["statistic"] = w.statistic;
                j["p"] = w.p_value;
                j["notes"] = w.notes;
                pvals.push_back(w.p_value);
                pval_row.push_back(row_idx);
            } catch (const NumericError& e) {
                j["error"] = e.what();
            }
            rows_out.push_back(std::move(j));
            ++row_idx;
        }
        if (!pvals.empty()) {
            const auto adj = stats::bh_fdr(pvals);
            for (std::size_t i = 0; i < adj.size(); ++i) {
                rows_out[pval_row[i]]["p_fdr"] = adj[i];
            }
        }
        const std::string fname =
            region == "US" ? "tests/wilcoxon_states.json" : "tests/wilcoxon_countries.json";
        write_json(out / fname, json{{"region", region}, {"rows", rows_out}});
    }

    // Kruskal-Wallis across units (posts and mean comment sentiment per post)
    for (const std::string region : {"US", "EU"}) {
        const std::string scope = region == "US" ? "state" : "country";
        const auto groups = unit_groups(posts, scores, geo, region,
                                        static_cast<std::size_t>(cfg.min_posts_state));
        if (groups.size() >= 2) {
            std::vector<std::vector<double>> values;
            std::vector<std::string> names;
            for (const auto& [unit, vals] : groups) {
                names.push_back(unit);
                values.push_back(vals);
            }
            auto kw = stats::kruskal_wallis(values);
            json j = test_result_json(kw);
            j["units"] = names;
            j["min_per_unit"] = cfg.min_posts_state;
            write_json(out / ("tests/kruskal_" + scope + "_posts.json"), j);
            if (values.size() >= 3) {
                write_dunn_csv(out / ("dunn_" + scope + ".csv"),
                               stats::dunn_posthoc(values, names));
            }
        }
        // mean comment sentiment per post, grouped by unit
        std::map<std::string, std::vector<double>> comment_groups;
        for (const auto& p : posts) {
            const auto git = geo.find(p.id);
            if (git == geo.end() || git->second.region != region) continue;
            const auto tit = threads.find(p.id);
            if (tit == threads.end() ||
                static_cast<int>(tit->second.size()) < std::max(1, cfg.min_comments_for_pair)) {
                continue;
            }
            std::vector<double> cc;
            for (const auto& cid : tit->second) {
                const auto cs = scores.find(cid);
                if (cs != scores.end()) cc.push_back(cs->second.compound);
            }
            if (const auto mean = sentiment::mean_compound(cc)) {
                comment_groups[git->second.unit].push_back(*mean);
            }
        }
        std::map<std::string, std::size_t> sizes;
        for (const auto& [unit, vals] : comment_groups) sizes[unit] = vals.size();
        const auto kept = corpus::min_count_filter(sizes, static_cast<std::size_t>(cfg.min_posts_state));
        if (kept.size() >= 2) {
            std::vector<std::vector<double>> values;
            for (const auto& unit : kept) values.push_back(comment_groups[unit]);
            auto kw = stats::kruskal_wallis(values);
            json j = test_result_json(kw);
            j["units"] = kept;
            j["min_per_unit"] = cfg.min_posts_state;
            write_json(out / ("tests/kruskal_" + scope + "_comments.json"), j);
        }
    }
}

// ---- stage: lmm --------------------------------------------------------------

void run_lmm(const config::RunConfig& cfg) {
    const fs::path out(cfg.outdir);
    require_artifact(out, "ingest/posts.jsonl", Stage::Ingest);
    require_artifact(out, "sentiment/scores.jsonl", Stage::Sentiment);

    const auto posts = load_stage_posts(out);
    const auto threads = load_threads(out);
    const auto geo = load_geo(out);
    const auto scores = load_scores(out);

    const auto fit_and_write = [&](const std::string& region, const std::string& kind) {
        std::vector<double> y;
        std::vector<std::string> city;
        std::vector<std::string> unit;
        for (const auto& p : posts) {
            const auto git = geo.find(p.id);
            if (git == geo.end() || git->second.region != region || git->second.city.empty()) {
                continue;
            }
            const auto sit = scores.find(p.id);
            if (sit == scores.end()) continue;
            double value = 0.0;
            if (kind == "post") {
                value = sit->second.compound;
            } else {
                const auto tit = threads.find(p.id);
                if (tit == threads.end() || tit->second.empty()) continue;
                std::vector<double> cc;
                for (const auto& cid : tit->second) {
                    const auto cs = scores.find(cid);
                    if (cs != scores.end()) cc.push_back(cs->second.compound);
                }
                const auto mean = sentiment::mean_compound(cc);
                if (!mean) continue;
                value = *mean;
            }
            y.push_back(value);
            city.push_back(git->second.city);
            unit.push_back(git->second.unit);
        }
        const std::string fname =
            "lmm_" + std::string(region == "US" ? "us" : "eu") + "_" + kind + ".json";
        json j;
        try {
            lmm::FitOptions opts;
            opts.reml = cfg.reml;
            const auto fit = lmm::fit_random_intercept(lmm::make_lmm_data(y, city, unit), opts);
            j = json{{"var_city", fit.var_group},   {"var_resid", fit.var_resid},
                     {"icc", fit.icc},              {"n_cities", fit.n_cities},
                     {"n_obs", fit.n_obs},          {"loglik", fit.loglik},
                     {"lambda", fit.lambda},        {"converged", fit.converged},
                     {"boundary", fit.boundary},    {"reml", cfg.reml}};
        } catch (const std::exception& e) {
            j = json{{"error", e.what()}, {"n_obs", y.size()}};
        }
        write_json(out / fname, j);
    };

    for (const std::string region : {"US", "EU"}) {
        fit_and_write(region, "post");
        fit_and_write(region, "comment");
    }
}

// ---- stage: report ---------------------------------------------------------------

void run_report(const config::RunConfig& cfg) {
    const fs::path out(cfg.outdir);
    require_artifact(out, "ingest/posts.jsonl", Stage::Ingest);
    require_artifact(out, "sentiment/scores.jsonl", Stage::Sentiment);

    const auto posts = load_stage_posts(out);
    const auto comments = load_stage_comments(out);
    const auto threads = load_threads(out);
    const auto geo = load_geo(out);
    const auto scores = load_scores(out);
    const auto stopwords = report::load_stopwords(input_path(cfg.stopwords, "stopwords"));

    // comment region comes from the parent post
    std::map<std::string, std::string> comment_region;
    for (const auto& [post_id, cids] : threads) {
        const auto git = geo.find(post_id);
        if (git == geo.end()) continue;
        for (const auto& cid : cids) comment_region[cid] = git->second.region;
    }

    std::map<std::string, std::vector<double>> post_by_region;
    std::map<std::string, std::vector<double>> comment_by_region;
    std::map<std::string, std::vector<double>> post_by_unit;   // "REGION/unit"
    std::map<std::string, std::vector<double>> post_by_city;   // "REGION/unit/city"
    for (const auto& p : posts) {
        const auto git = geo.find(p.id);
        const auto sit = scores.find(p.id);
        if (git == geo.end() || sit == scores.end()) continue;
        const auto& g = git->second;
        post_by_region[g.region].push_back(sit->second.compound);
        post_by_unit[g.region + "/" + g.unit].push_back(sit->second.compound);
        if (!g.city.empty()) {
            post_by_city[g.region + "/" + g.unit + "/" + g.city].push_back(sit->second.compound);
        }
    }
    for (const auto& c : comments) {
        const auto rit = comment_region.find(c.comment_id);
        const auto sit = scores.find(c.comment_id);
        if (rit == comment_region.end() || sit == scores.end()) continue;
        comment_by_region[rit->second].push_back(sit->second.compound);
    }

    std::vector<std::vector<std::string>> rows;
    const auto add_row = [&](const std::string& scope_type, const std::string& scope,
                             const std::string& kind, const std::vector<double>& vals) {
        if (vals.empty()) return;
        const auto r = report::summarize_group(scope, kind, vals, cfg.positive_threshold,
                                               cfg.negative_threshold);
        rows.push_back({scope_type, r.scope, r.kind, std::to_string(r.n),
                        util::format_fixed(r.mean, 6), util::format_fixed(r.std_pop, 6),
                        util::format_fixed(r.std_sample, 6),
                        util::format_fixed(r.pct_positive, 6),
                        util::format_fixed(r.pct_negative, 6)});
    };
    for (const auto& [region, vals] : post_by_region) add_row("region", region, "posts", vals);
    for (const auto& [region, vals] : comment_by_region) {
        add_row("region", region, "comments", vals);
    }
    for (const auto& [unit, vals] : post_by_unit) add_row("unit", unit, "posts", vals);
    for (const auto& [city, vals] : post_by_city) add_row("city", city, "posts", vals);
    report::write_csv(out / "sentiment_summary.csv",
                      {"scope_type", "scope", "kind", "n", "mean", "std", "std_sample",
                       "pct_positive", "pct_negative"},
                      rows);

    // word frequency tables per region
    for (const std::string region : {"US", "EU"}) {
        std::vector<std::string> texts;
        for (const auto& p : posts) {
            const auto git = geo.find(p.id);
            if (git != geo.end() && git->second.region == region) {
                texts.push_back(corpus::analysis_text(p));
            }
        }
        const auto freq = report::word_frequencies(texts, stopwords);
        std::vector<std::vector<std::string>> wrows;
        for (const auto& [term, count] : freq) wrows.push_back({term, std::to_string(count)});
        report::write_csv(out / ("wordfreq_" + region + ".csv"), {"term", "count"}, wrows);
    }

    const auto dist_json = [&](const std::vector<double>& vals) {
        const auto d = report::distribution_data(vals, cfg.bins);
        json ecdf = json::array();
        for (const auto& [v, f] : d.ecdf) ecdf.push_back({{"value", v}, {"cum_fraction", f}});
        return json{{"n", d.n},
                    {"ecdf", ecdf},
                    {"bin_edges", d.bin_edges},
                    {"counts", d.counts},
                    {"boxplot",
                     {{"q1", d.box.q1},
                      {"median", d.box.median},
                      {"q3", d.box.q3},
                      {"whisker_lo", d.box.whisker_lo},
                      {"whisker_hi", d.box.whisker_hi},
                      {"outliers", d.box.outliers}}}};
    };
    for (const auto& [region, vals] : post_by_region) {
        write_json(out / ("dist_posts_" + region + ".json"), dist_json(vals));
    }
    for (const auto& [region, vals] : comment_by_region) {
        write_json(out / ("dist_comments_" + region + ".json"), dist_json(vals));
    }

    // per-unit boxplot data behind the minimum post thresholds
    for (const std::string region : {"US", "EU"}) {
        const std::size_t min_n = region == "US"
                                      ? static_cast<std::size_t>(cfg.min_posts_state)
                                      : static_cast<std::size_t>(cfg.min_posts_country_plot);
        std::map<std::string, std::size_t> sizes;
        std::map<std::string, std::vector<double>> values;
        for (const auto& [key, vals] : post_by_unit) {
            if (key.rfind(region + "/", 0) == 0) {
                const std::string unit = key.substr(region.size() + 1);
                sizes[unit] = vals.size();
                values[unit] = vals;
            }
        }
        json units = json::object();
        for (const auto& unit : corpus::min_count_filter(sizes, min_n)) {
            const auto box = report::boxplot_stats(values[unit]);
            units[unit] = {{"n", values[unit].size()},
                           {"q1", box.q1},
                           {"median", box.median},
                           {"q3", box.q3},
                           {"whisker_lo", box.whisker_lo},
                           {"whisker_hi", box.whisker_hi},
                           {"outliers", box.outliers}};
        }
        const std::string fname =
            region == "US" ? "dist_states_US.json" : "dist_countries_EU.json";
        write_json(out / fname, json{{"region", region}, {"min_posts", min_n}, {"units", units}});
    }
}

}  // namespace

void write_manifest(const config::RunConfig& cfg) {
    const fs::path out(cfg.outdir);
    json inputs = json::object();
    for (const std::string& p : {cfg.posts, cfg.comments, cfg.geo_map, cfg.lexicon,
                                 cfg.aspect_lexicon, cfg.embeddings, cfg.stopwords}) {
        if (p.empty() || !fs::exists(p)) continue;
        const auto content = util::read_file(p);
        inputs[p] = {{"sha256", util::sha256_hex(content)}, {"bytes", content.size()}};
    }
    json artifacts = json::object();
    std::vector<fs::path> files;
    if (fs::exists(out)) {
        for (const auto& entry : fs::recursive_directory_iterator(out)) {
            if (!entry.is_regular_file()) continue;
            if (entry.path().filename() == "manifest.json") continue;
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        const auto rel = fs::relative(f, out).generic_string();
        const auto content = util::read_file(f);
        artifacts[rel] = {{"sha256", util::sha256_hex(content)}, {"bytes", content.size()}};
    }
    const json manifest{{"tool", "corpuslens"},
                        {"version", config::kToolVersion},
                        {"config", config::to_json(cfg)},
                        {"inputs", inputs},
                        {"artifacts", artifacts}};
    util::write_file(out / "manifest.json", manifest.dump(2) + "\n");
}

void run_stage(const config::RunConfig& cfg, Stage stage) {
    config::validate(cfg);
    switch (stage) {
        case Stage::Ingest: run_ingest(cfg); break;
        case Stage::Sentiment: run_sentiment(cfg); break;
        case Stage::Aspects: run_aspects(cfg); break;
        case Stage::Topics: run_topics(cfg); break;
        case Stage::Stats: run_stats(cfg); break;
        case Stage::Lmm: run_lmm(cfg); break;
        case Stage::Report: run_report(cfg); break;
    }
    write_manifest(cfg);
}

void run_all(const config::RunConfig& cfg) {
    config::validate(cfg);
    run_ingest(cfg);
    run_sentiment(cfg);
    run_aspects(cfg);
    run_topics(cfg);
    run_stats(cfg);
    run_lmm(cfg);
    run_report(cfg);
    write_manifest(cfg);
}

}  // namespace corpuslens::pipeline
