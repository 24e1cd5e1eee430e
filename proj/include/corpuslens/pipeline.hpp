#ifndef CORPUSLENS_PIPELINE_HPP
#define CORPUSLENS_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>

#include "corpuslens/config.hpp"

namespace corpuslens::pipeline {

enum class Stage { Ingest, Sentiment, Aspects, Topics, Stats, Lmm, Report };

std::string_view stage_name(Stage stage);
std::optional<Stage> parse_stage(std::string_view name);

// Runs one stage against the artifacts already in cfg.outdir. Missing
// prior-stage artifacts raise DataError naming the subcommand to run first.
// The manifest is rewritten after the stage completes.
void run_stage(const config::RunConfig& cfg, Stage stage);

// Full DAG: ingest, sentiment, aspects, topics, stats, lmm, report.
void run_all(const config::RunConfig& cfg);

// Records input hashes, resolved config, tool version and artifact hashes.
void write_manifest(const config::RunConfig& cfg);

struct FixtureSpec {
    int n_posts = 200;
    std::uint64_t seed = 12345;
};

// Bundled synthetic corpus: two regions (3 states / 3 countries, 2 cities
// each), negative theft-themed posts vs positive recreation-themed posts,
// per-city mood offsets, comments skewing more critical than posts. Writes
// posts.jsonl, comments.jsonl, geo_map.json and a ready-to-run config.json.
void generate_fixture(const std::filesystem::path& dir, const FixtureSpec& spec);

}  // namespace corpuslens::pipeline

#endif
