#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "corpuslens/config.hpp"
#include "corpuslens/errors.hpp"
#include "corpuslens/pipeline.hpp"
#include "corpuslens/util.hpp"

using namespace corpuslens;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

config::RunConfig fixture_config(const fs::path& dir) {
    pipeline::FixtureSpec spec;
    spec.n_posts = 60;
    pipeline::generate_fixture(dir, spec);
    auto cfg = config::load_config(dir / "config.json");
    cfg.min_posts_state = 5;  // the small corpus still exercises the unit-level tests
    cfg.min_posts_country_plot = 5;
    return cfg;
}

}  // namespace

TEST_CASE("stage ordering is enforced with a helpful message") {
    const auto dir = fresh_dir("cl_pipe_order");
    const auto cfg = fixture_config(dir);
    // stats without sentiment (nor ingest): the message names the missing stage
    CHECK_THROWS_WITH_AS(pipeline::run_stage(cfg, pipeline::Stage::Stats),
                         doctest::Contains("ingest"), DataError);
    pipeline::run_stage(cfg, pipeline::Stage::Ingest);
    CHECK_THROWS_WITH_AS(pipeline::run_stage(cfg, pipeline::Stage::Stats),
                         doctest::Contains("sentiment"), DataError);
}

TEST_CASE("full pipeline emits the documented artifact set") {
    const auto dir = fresh_dir("cl_pipe_all");
    const auto cfg = fixture_config(dir);
    pipeline::run_all(cfg);
    const fs::path out(cfg.outdir);
    for (const char* rel :
         {"manifest.json", "ingest/posts.jsonl", "ingest/comments.jsonl", "ingest/threads.jsonl",
          "ingest/rejects.jsonl", "sentiment/scores.jsonl", "aspects/assignments.jsonl",
          "aspect_summary.csv", "topics.json", "sentiment_summary.csv", "wordfreq_US.csv",
          "wordfreq_EU.csv", "dist_posts_US.json", "dist_posts_EU.json", "dist_comments_US.json",
          "dist_comments_EU.json", "dist_states_US.json", "dist_countries_EU.json",
          "dunn_state.csv", "dunn_country.csv", "tests/mann_whitney_posts.json",
          "tests/ks_posts.json", "tests/wilcoxon_paired_US.json", "tests/wilcoxon_paired_EU.json",
          "tests/wilcoxon_states.json", "tests/wilcoxon_countries.json",
          "tests/kruskal_state_posts.json", "tests/kruskal_country_posts.json",
          "lmm_us_post.json", "lmm_eu_post.json", "lmm_us_comment.json", "lmm_eu_comment.json"}) {
        INFO("artifact: ", rel);
        CHECK(fs::exists(out / rel));
    }

    // scores file carries the documented fields
    std::ifstream scores(out / "sentiment/scores.jsonl");
    std::string line;
    REQUIRE(std::getline(scores, line));
    const auto obj = nlohmann::json::parse(line);
    for (const char* key : {"doc_id", "kind", "neg", "neu", "pos", "compound", "polarity"}) {
        CHECK(obj.contains(key));
    }
}

TEST_CASE("config loader rejects unknown keys and bad values") {
    const auto dir = fresh_dir("cl_pipe_cfg");
    const auto bad = dir / "bad.json";
    util::write_file(bad, "{\"paths\": {\"postz\": \"x\"}}");
    CHECK_THROWS_AS(config::load_config(bad), ConfigError);

    const auto bad2 = dir / "bad2.json";
    util::write_file(bad2, "{\"topics\": {\"min_cluster_size\": 1}}");
    CHECK_THROWS_AS(config::load_config(bad2), ConfigError);

    const auto bad3 = dir / "bad3.json";
    util::write_file(bad3, "{\"flags\": {\"wilcoxon_zeros\": \"sometimes\"}}");
    CHECK_THROWS_AS(config::load_config(bad3), ConfigError);
}

TEST_CASE("fixture generator is deterministic per seed") {
    const auto d1 = fresh_dir("cl_fix_a");
    const auto d2 = fresh_dir("cl_fix_b");
    pipeline::FixtureSpec spec;
    spec.n_posts = 40;
    pipeline::generate_fixture(d1, spec);
    pipeline::generate_fixture(d2, spec);
    CHECK(util::read_file(d1 / "posts.jsonl") == util::read_file(d2 / "posts.jsonl"));
    CHECK(util::read_file(d1 / "comments.jsonl") == util::read_file(d2 / "comments.jsonl"));

    pipeline::FixtureSpec other;
    other.n_posts = 40;
    other.seed = 777;
    const auto d3 = fresh_dir("cl_fix_c");
    pipeline::generate_fixture(d3, other);
    CHECK(util::read_file(d1 / "posts.jsonl") != util::read_file(d3 / "posts.jsonl"));
}
