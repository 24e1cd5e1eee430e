#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>

#include "corpuslens/config.hpp"
#include "corpuslens/errors.hpp"
#include "corpuslens/pipeline.hpp"

using corpuslens::config::RunConfig;

int main(int argc, char** argv) {
    CLI::App app{"corpuslens: sentiment, topics and spatial statistics for discussion corpora"};
    app.require_subcommand(1);

    std::string config_path;
    RunConfig cli;  // defaults; config file values are applied first, flags override

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file (flags override it)");
        sub->add_option("--posts", cli.posts, "posts.jsonl input")->capture_default_str();
        sub->add_option("--comments", cli.comments, "comments.jsonl input")->capture_default_str();
        sub->add_option("--geo-map", cli.geo_map, "subreddit geography JSON")
            ->capture_default_str();
        sub->add_option("--lexicon", cli.lexicon, "sentiment lexicon TSV")->capture_default_str();
        sub->add_option("--aspect-lexicon", cli.aspect_lexicon,
                        "aspect keyword JSON (empty = built-in)")
            ->capture_default_str();
        sub->add_option("--embeddings", cli.embeddings,
                        "document embeddings file (empty = hashed fallback)")
            ->capture_default_str();
        sub->add_option("--stopwords", cli.stopwords, "stopword list")->capture_default_str();
        sub->add_option("--outdir", cli.outdir, "artifact directory")->capture_default_str();
        sub->add_option("--min-posts-state", cli.min_posts_state,
                        "minimum posts per unit for geographic tests")
            ->capture_default_str();
        sub->add_option("--min-posts-country-plot", cli.min_posts_country_plot,
                        "minimum posts per country for distribution data")
            ->capture_default_str();
        sub->add_option("--min-comments-for-pair", cli.min_comments_for_pair,
                        "minimum comments for the paired post/comment analyses")
            ->capture_default_str();
        sub->add_option("--min-cluster-size", cli.min_cluster_size, "clustering grain")
            ->capture_default_str();
        sub->add_option("--min-samples", cli.min_samples,
                        "core distance neighbor count (0 = min-cluster-size)")
            ->capture_default_str();
        sub->add_option("--top-k", cli.top_k, "keywords per topic")->capture_default_str();
        sub->add_option("--fallback-dim", cli.fallback_dim, "fallback embedder dimension")
            ->capture_default_str();
        sub->add_option("--pca-dim", cli.pca_dim, "optional PCA projection (0 = off)")
            ->capture_default_str();
        sub->add_option("--positive-threshold", cli.positive_threshold,
                        "compound cutoff for the positive class")
            ->capture_default_str();
        sub->add_option("--negative-threshold", cli.negative_threshold,
                        "compound cutoff for the negative class")
            ->capture_default_str();
        sub->add_option("--bins", cli.bins, "histogram bins over [-1,1]")->capture_default_str();
        sub->add_option("--seed", cli.seed, "seed for every stochastic step")
            ->capture_default_str();
        sub->add_option("--threads", cli.threads,
                        "worker cap (0 = CORPUS_LENS_THREADS env or hardware)")
            ->capture_default_str();
        sub->add_option("--wilcoxon-zeros", cli.wilcoxon_zeros, "zero-difference policy: drop|pratt")
            ->capture_default_str();
        sub->add_flag("!--no-continuity", cli.continuity,
                      "disable the continuity correction in normal approximations");
        sub->add_flag("!--ml", cli.reml, "use ML instead of REML for the mixed model");
        sub->add_option("--keywords", cli.keywords,
                        "ingest keyword filter (whole-token match; empty = keep all)");
    };

    std::vector<CLI::App*> stage_subs;
    for (const char* name : {"ingest", "sentiment", "aspects", "topics", "stats", "lmm", "report",
                             "all"}) {
        CLI::App* sub = app.add_subcommand(
            name, name == std::string("all") ? "run the full pipeline"
                                             : std::string("run the ") + name + " stage");
        add_common(sub);
        stage_subs.push_back(sub);
    }

    // hidden fixture generator: plants known structure for end-to-end runs
    CLI::App* gen = app.add_subcommand("gen-fixture", "");
    gen->group("");
    std::string fixture_dir = "fixture";
    int fixture_posts = 200;
    std::uint64_t fixture_seed = 12345;
    gen->add_option("--dir", fixture_dir, "output directory")->capture_default_str();
    gen->add_option("--posts", fixture_posts, "number of posts")->capture_default_str();
    gen->add_option("--seed", fixture_seed, "generator seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            corpuslens::pipeline::FixtureSpec spec;
            spec.n_posts = fixture_posts;
            spec.seed = fixture_seed;
            corpuslens::pipeline::generate_fixture(fixture_dir, spec);
            std::printf("fixture written to %s\n", fixture_dir.c_str());
            return 0;
        }

        RunConfig cfg;
        if (!config_path.empty()) cfg = corpuslens::config::load_config(config_path);
        // flags override config-file values only when the user passed them
        for (CLI::App* sub : stage_subs) {
            if (!sub->parsed()) continue;
            const auto touched = [&](const std::string& flag) {
                return sub->count(flag) > 0;
            };
            if (touched("--posts")) cfg.posts = cli.posts;
            if (touched("--comments")) cfg.comments = cli.comments;
            if (touched("--geo-map")) cfg.geo_map = cli.geo_map;
            if (touched("--lexicon")) cfg.lexicon = cli.lexicon;
            if (touched("--aspect-lexicon")) cfg.aspect_lexicon = cli.aspect_lexicon;
            if (touched("--embeddings")) cfg.embeddings = cli.embeddings;
            if (touched("--stopwords")) cfg.stopwords = cli.stopwords;
            if (touched("--outdir")) cfg.outdir = cli.outdir;
            if (touched("--min-posts-state")) cfg.min_posts_state = cli.min_posts_state;
            if (touched("--min-posts-country-plot")) {
                cfg.min_posts_country_plot = cli.min_posts_country_plot;
            }
            if (touched("--min-comments-for-pair")) {
                cfg.min_comments_for_pair = cli.min_comments_for_pair;
            }
            if (touched("--min-cluster-size")) cfg.min_cluster_size = cli.min_cluster_size;
            if (touched("--min-samples")) cfg.min_samples = cli.min_samples;
            if (touched("--top-k")) cfg.top_k = cli.top_k;
            if (touched("--fallback-dim")) cfg.fallback_dim = cli.fallback_dim;
            if (touched("--pca-dim")) cfg.pca_dim = cli.pca_dim;
            if (touched("--positive-threshold")) cfg.positive_threshold = cli.positive_threshold;
            if (touched("--negative-threshold")) cfg.negative_threshold = cli.negative_threshold;
            if (touched("--bins")) cfg.bins = cli.bins;
            if (touched("--seed")) cfg.seed = cli.seed;
            if (touched("--threads")) cfg.threads = cli.threads;
            if (touched("--wilcoxon-zeros")) cfg.wilcoxon_zeros = cli.wilcoxon_zeros;
            if (touched("--no-continuity")) cfg.continuity = cli.continuity;
            if (touched("--ml")) cfg.reml = cli.reml;
            if (touched("--keywords")) cfg.keywords = cli.keywords;

            const std::string name = sub->get_name();
            if (name == "all") {
                corpuslens::pipeline::run_all(cfg);
            } else {
                corpuslens::pipeline::run_stage(cfg, *corpuslens::pipeline::parse_stage(name));
            }
            return 0;
        }
        return 0;
    } catch (const corpuslens::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return static_cast<int>(corpuslens::ExitCode::ConfigError);
    } catch (const corpuslens::DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return static_cast<int>(corpuslens::ExitCode::DataError);
    } catch (const corpuslens::NumericError& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return static_cast<int>(corpuslens::ExitCode::NumericError);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return static_cast<int>(corpuslens::ExitCode::NumericError);
    }
}
