#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "corpuslens/config.hpp"
#include "corpuslens/pipeline.hpp"
#include "corpuslens/util.hpp"

namespace corpuslens::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;
using util::SplitMix64;

namespace {

struct City {
    const char* name;
    const char* unit;
    const char* region;
    const char* subreddit;
};

constexpr std::array<City, 12> kCities = {{
    {"Seattle", "Washington", "US", "bikeseattle"},
    {"Tacoma", "Washington", "US", "tacomarides"},
    {"Portland", "Oregon", "US", "pdxcycling"},
    {"Eugene", "Oregon", "US", "eugenebikes"},
    {"Denver", "Colorado", "US", "denvercycling"},
    {"Boulder", "Colorado", "US", "boulderbikes"},
    {"Berlin", "Germany", "EU", "berlinbikes"},
    {"Munich", "Germany", "EU", "munichcycling"},
    {"Amsterdam", "Netherlands", "EU", "amsterdamfiets"},
    {"Utrecht", "Netherlands", "EU", "utrechtcycling"},
    {"Copenhagen", "Denmark", "EU", "cphcyclists"},
    {"Aarhus", "Denmark", "EU", "aarhusbikes"},
}};

const std::vector<std::string> kTheftBits = {
    "my bike was stolen from the rack outside the station",
    "thief cut the lock in broad daylight and nobody stopped him",
    "police report filed after the theft but little hope",
    "angry and upset, second stolen frame this year",
    "terrible feeling walking out to an empty bike rack",
    "stolen wheels again, the parking garage is awful for security",
    "lock was useless, theft is out of control downtown",
    "horrible week, bike theft near the bridge and no cameras",
    "lost my commuter to a thief, feeling defeated and sad",
    "worst part of this city is the constant bike theft",
};

const std::vector<std::string> kRecreationBits = {
    "amazing gravel ride on the river trail this morning",
    "beautiful sunrise loop on the greenway, great pavement",
    "wonderful group ride along the waterfront trail",
    "love the new bike path through the park, super smooth",
    "fantastic weekend tour, scenic hills and friendly riders",
    "perfect weather for a long ride on the rail trail",
    "great climb and a lovely descent, happy legs",
    "the trail network here keeps getting better, love it",
    "joyful evening spin, sunset over the bridge was gorgeous",
    "best ride of the season, smooth trail and good company",
};

const std::vector<std::string> kMiscBits = {
    "schedule update for the council meeting next week",
    "agenda posted for the regional planning session",
    "survey window extended through the end of the month",
    "volunteer signup sheet for the repair workshop",
    "newsletter draft circulated to the committee list",
    "budget line items reviewed during the open session",
};

const std::vector<std::string> kAspectBits = {
    "the protected bike lane on 3rd",
    "the painted lane near the market",
    "bike parking at the transit center",
    "the intersection signal timing",
    "construction on the main bridge",
    "the bike rack bus option",
};

const std::vector<std::string> kCommentNegative = {
    "cars keep parking in the lane, it is dangerous and frustrating",
    "disagree, the design is terrible and the paint is already fading",
    "my friend got hurt there last month, awful intersection",
    "the city never maintains these, sadly it will be ruined by winter",
    "worst stretch in town, broken glass everywhere",
    "angry about the delays, this took three years too long",
};

const std::vector<std::string> kCommentPositive = {
    "agreed, this is a great improvement for the neighborhood",
    "rode it yesterday, smooth and safe, love it",
    "nice work by the crew, the new surface is excellent",
};

const std::vector<std::string> kCommentNeutral = {
    "any idea when the second phase opens",
    "which direction were you heading",
    "there is a map of the detour on the city site",
};

std::string pick(const std::vector<std::string>& pool, SplitMix64& rng) {
    return pool[static_cast<std::size_t>(rng.next_below(pool.size()))];
}

}  // namespace

void generate_fixture(const fs::path& dir, const FixtureSpec& spec) {
    SplitMix64 rng(spec.seed);
    fs::create_directories(dir);

    // fixed per-city mood offsets give the mixed model real between-city variance
    std::array<double, kCities.size()> city_mood{};
    for (auto& m : city_mood) m = 0.12 * rng.next_gaussian();

    json geo = json::object();
    for (const auto& c : kCities) {
        geo[c.subreddit] = {{"region", c.region}, {"unit", c.unit}, {"city", c.name}};
    }
    util::write_file(dir / "geo_map.json", geo.dump(2) + "\n");

    const int n_posts = spec.n_posts;
    std::string posts_body;
    std::string comments_body;
    std::int64_t ts = 1700000000;
    int comment_serial = 0;

    for (int i = 0; i < n_posts; ++i) {
        // alternate regions, round-robin cities within the region
        const bool us = i % 2 == 0;
        const std::size_t base = us ? 0 : 6;
        const std::size_t city_idx = base + static_cast<std::size_t>((i / 2) % 6);
        const City& city = kCities[city_idx];
        const double mood = city_mood[city_idx];

        const int theme_draw = i % 10;  // 0-3 theft, 4-7 recreation, 8-9 misc
        std::string title;
        std::string body;
        if (theme_draw < 4) {
            title = "bike stolen near " + std::string(city.name);
            body = pick(kTheftBits, rng) + ", " + pick(kTheftBits, rng);
            if (rng.next_double() < 0.4) body += ", right by " + pick(kAspectBits, rng);
            if (mood > 0.1 && rng.next_double() < 0.5) {
                body += ", at least the community here is helpful";
            }
        } else if (theme_draw < 8) {
            title = "weekend ride around " + std::string(city.name);
            body = pick(kRecreationBits, rng) + ", " + pick(kRecreationBits, rng);
            if (rng.next_double() < 0.4) body += ", passing " + pick(kAspectBits, rng);
            if (mood > 0.1 && rng.next_double() < 0.6) body += ", truly wonderful";
            if (mood < -0.1 && rng.next_double() < 0.5) body += ", though the wind was annoying";
        } else {
            title = "city updates for " + std::string(city.name);
            body = pick(kMiscBits, rng) + ", " + pick(kMiscBits, rng);
            if (rng.next_double() < 0.5) body += ", including " + pick(kAspectBits, rng);
        }

        char idbuf[16];
        std::snprintf(idbuf, sizeof(idbuf), "p%04d", i);
        const std::string post_id(idbuf);
        ts += 900 + static_cast<std::int64_t>(rng.next_below(600));

        // comments skew critical: discussion reads more negative than posts
        int n_comments = 1 + static_cast<int>(rng.next_below(4));
        if (rng.next_double() < 0.08) n_comments = 0;

        posts_body += json{{"id", post_id},
                           {"subreddit", city.subreddit},
                           {"title", title},
                           {"selftext", body},
                           {"author", "user" + std::to_string(rng.next_below(50))},
                           {"created_utc", ts},
                           {"num_comments", n_comments},
                           {"score", static_cast<int>(rng.next_below(200))},
                           {"upvote_ratio", 0.5 + 0.005 * static_cast<double>(rng.next_below(100))},
                           {"permalink", "https://example.org/" + post_id}}
                          .dump() +
                      "\n";

        for (int c = 0; c < n_comments; ++c) {
            const double draw = rng.next_double();
            std::string ctext;
            if (draw < 0.55 - mood) {
                ctext = pick(kCommentNegative, rng);
            } else if (draw < 0.8) {
                ctext = pick(kCommentPositive, rng);
            } else {
                ctext = pick(kCommentNeutral, rng);
            }
            char cidbuf[16];
            std::snprintf(cidbuf, sizeof(cidbuf), "c%05d", comment_serial++);
            comments_body += json{{"comment_id", std::string(cidbuf)},
                                  {"parent_id", post_id},
                                  {"body", ctext},
                                  {"author", "user" + std::to_string(rng.next_below(50))},
                                  {"created_utc", ts + 60 * (c + 1)},
                                  {"score", static_cast<int>(rng.next_below(40))}}
                                 .dump() +
                             "\n";
        }
    }
    util::write_file(dir / "posts.jsonl", posts_body);
    util::write_file(dir / "comments.jsonl", comments_body);

    config::RunConfig cfg;
    cfg.posts = (dir / "posts.jsonl").string();
    cfg.comments = (dir / "comments.jsonl").string();
    cfg.geo_map = (dir / "geo_map.json").string();
    cfg.lexicon = (config::default_asset_dir() / "sentiment_lexicon.tsv").string();
    cfg.stopwords = (config::default_asset_dir() / "stopwords_en.txt").string();
    cfg.outdir = (dir / "out").string();
    cfg.seed = spec.seed;
    util::write_file(dir / "config.json", config::to_json(cfg).dump(2) + "\n");
}

}  // namespace corpuslens::pipeline
