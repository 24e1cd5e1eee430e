#ifndef CORPUSLENS_CORPUS_HPP
#define CORPUSLENS_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace corpuslens::corpus {

struct Post {
    std::string id;
    std::string subreddit;
    std::string title;
    std::string selftext;
    std::string author;
    std::int64_t created_utc = 0;
    std::int64_t num_comments = 0;
    std::int64_t score = 0;
    double upvote_ratio = 0.0;
    std::string source_link;  // optional "permalink" key
};

// title alone when selftext is empty, else title + " " + selftext
std::string analysis_text(const Post& post);

struct Comment {
    std::string comment_id;
    std::string parent_id;
    std::string body;
    std::string author;
    std::int64_t created_utc = 0;
    std::int64_t score = 0;
};

enum class Region { US, EU };

std::string_view region_name(Region r);
Region parse_region(std::string_view name);  // "US" or "EU"

struct GeoUnit {
    Region region = Region::US;
    std::string unit;  // US state or EU country
    std::string city;  // may be empty
    std::string subreddit;
};

// subreddit -> geography; geography is never inferred from text
using GeoMap = std::map<std::string, GeoUnit>;

GeoMap load_geo_map(const std::filesystem::path& path);

struct Reject {
    std::string file;
    std::size_t line = 0;
    std::string reason;
};

struct PostLoadResult {
    std::vector<Post> posts;  // sorted by id; duplicate ids resolved last-wins
    std::vector<Reject> rejects;
    std::size_t duplicates = 0;
    std::size_t total_lines = 0;  // nonblank lines seen
};

struct CommentLoadResult {
    std::vector<Comment> comments;  // sorted by comment_id; last-wins on duplicates
    std::vector<Reject> rejects;
    std::size_t duplicates = 0;
    std::size_t total_lines = 0;
};

// One JSON object per line. Malformed or invalid lines are reported in
// `rejects` with their line number, never dropped silently:
// posts.size() + duplicates + rejects.size() == total_lines.
PostLoadResult load_posts(const std::filesystem::path& path);
CommentLoadResult load_comments(const std::filesystem::path& path);

struct Thread {
    Post post;
    std::vector<Comment> comments;  // ascending created_utc, ties by comment_id
};

struct LinkResult {
    std::vector<Thread> threads;    // ordered by post id
    std::vector<Comment> orphans;   // parent_id matched no post; sorted by comment_id
};

// Attaches every comment whose parent_id matches a post id; the rest are
// orphans (data, not errors). attached + orphans == input comments.
LinkResult link_threads(std::vector<Post> posts, std::vector<Comment> comments);

// Whole-token keyword retention on normalized title+selftext. Multi-word
// keywords match as contiguous token phrases. Keywords must be nonempty.
std::vector<Post> keyword_filter(const std::vector<Post>& posts,
                                 const std::vector<std::string>& keywords);

// Units whose group size reaches the threshold ("at least" semantics),
// sorted by name. threshold must be >= 1.
std::vector<std::string> min_count_filter(const std::map<std::string, std::size_t>& group_sizes,
                                          std::size_t threshold);

}  // namespace corpuslens::corpus

#endif
