#include "corpuslens/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include <json.hpp>

#include "corpuslens/errors.hpp"
#include "corpuslens/text.hpp"

namespace corpuslens::corpus {

using nlohmann::json;

std::string analysis_text(const Post& post) {
    if (post.selftext.empty()) return post.title;
    return post.title + " " + post.selftext;
}

std::string_view region_name(Region r) { return r == Region::US ? "US" : "EU"; }

Region parse_region(std::string_view name) {
    if (name == "US") return Region::US;
    if (name == "EU") return Region::EU;
    throw DataError("geo map: unknown region '" + std::string(name) + "' (expected US or EU)");
}

namespace {

std::string require_string(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
        throw DataError(std::string("missing or non-string field '") + key + "'");
    }
    return it->get<std::string>();
}

std::int64_t require_int(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_number()) {
        throw DataError(std::string("missing or non-numeric field '") + key + "'");
    }
    if (it->is_number_integer()) return it->get<std::int64_t>();
    const double v = it->get<double>();
    return static_cast<std::int64_t>(v);
}

double require_double(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_number()) {
        throw DataError(std::string("missing or non-numeric field '") + key + "'");
    }
    return it->get<double>();
}

Post parse_post(const json& obj) {
    Post p;
    p.id = require_string(obj, "id");
    p.subreddit = require_string(obj, "subreddit");
    p.title = require_string(obj, "title");
    p.selftext = require_string(obj, "selftext");
    p.author = require_string(obj, "author");
    p.created_utc = require_int(obj, "created_utc");
    p.num_comments = require_int(obj, "num_comments");
    p.score = require_int(obj, "score");
    p.upvote_ratio = require_double(obj, "upvote_ratio");
    if (const auto it = obj.find("permalink"); it != obj.end() && it->is_string()) {
        p.source_link = it->get<std::string>();
    }
    if (p.id.empty()) throw DataError("empty id");
    if (p.upvote_ratio < 0.0 || p.upvote_ratio > 1.0) {
        throw DataError("upvote_ratio outside [0,1]");
    }
    if (p.num_comments < 0) throw DataError("negative num_comments");
    if (p.created_utc <= 0) throw DataError("nonpositive created_utc");
    return p;
}

Comment parse_comment(const json& obj) {
    Comment c;
    c.comment_id = require_string(obj, "comment_id");
    c.parent_id = require_string(obj, "parent_id");
    c.body = require_string(obj, "body");
    c.author = require_string(obj, "author");
    c.created_utc = require_int(obj, "created_utc");
    c.score = require_int(obj, "score");
    if (c.comment_id.empty()) throw DataError("empty comment_id");
    if (c.parent_id.empty()) throw DataError("empty parent_id");
    return c;
}

// Shared JSONL walk: parse each nonblank line, dispatch to `consume`,
// record failures as rejects.
template <typename Fn>
void for_each_jsonl(const std::filesystem::path& path, std::vector<Reject>& rejects,
                    std::size_t& total_lines, Fn&& consume) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read file: " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = true;
        for (char ch : line) {
            if (ch != ' ' && ch != '\t') {
                blank = false;
                break;
            }
        }
        if (blank) continue;
        ++total_lines;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            rejects.push_back({path.filename().string(), lineno,
                               std::string("invalid JSON: ") + e.what()});
            continue;
        }
        if (!obj.is_object()) {
            rejects.push_back({path.filename().string(), lineno, "line is not a JSON object"});
            continue;
        }
        try {
            consume(obj);
        } catch (const DataError& e) {
            rejects.push_back({path.filename().string(), lineno, e.what()});
        }
    }
}

}  // namespace

PostLoadResult load_posts(const std::filesystem::path& path) {
    PostLoadResult out;
    std::unordered_map<std::string, std::size_t> by_id;
    for_each_jsonl(path, out.rejects, out.total_lines, [&](const json& obj) {
        Post p = parse_post(obj);
        if (const auto it = by_id.find(p.id); it != by_id.end()) {
            out.posts[it->second] = std::move(p);  // last record wins
            ++out.duplicates;
        } else {
            by_id.emplace(p.id, out.posts.size());
            out.posts.push_back(std::move(p));
        }
    });
    std::sort(out.posts.begin(), out.posts.end(),
              [](const Post& a, const Post& b) { return a.id < b.id; });
    return out;
}

CommentLoadResult load_comments(const std::filesystem::path& path) {
    CommentLoadResult out;
    std::unordered_map<std::string, std::size_t> by_id;
    for_each_jsonl(path, out.rejects, out.total_lines, [&](const json& obj) {
        Comment c = parse_comment(obj);
        if (const auto it = by_id.find(c.comment_id); it != by_id.end()) {
            out.comments[it->second] = std::move(c);
            ++out.duplicates;
        } else {
            by_id.emplace(c.comment_id, out.comments.size());
            out.comments.push_back(std::move(c));
        }
    });
    std::sort(out.comments.begin(), out.comments.end(),
              [](const Comment& a, const Comment& b) { return a.comment_id < b.comment_id; });
    return out;
}

GeoMap load_geo_map(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read geo map: " + path.string());
    json root;
    try {
        root = json::parse(in);
    } catch (const json::exception& e) {
        throw DataError("geo map: invalid JSON: " + std::string(e.what()));
    }
    if (!root.is_object()) throw DataError("geo map: top level must be an object");
    GeoMap out;
    for (const auto& [subreddit, entry] : root.items()) {
        if (!entry.is_object()) throw DataError("geo map: entry for '" + subreddit + "' not an object");
        GeoUnit g;
        g.subreddit = subreddit;
        g.region = parse_region(require_string(entry, "region"));
        g.unit = require_string(entry, "unit");
        if (g.unit.empty()) throw DataError("geo map: empty unit for '" + subreddit + "'");
        if (const auto it = entry.find("city"); it != entry.end() && it->is_string()) {
            g.city = it->get<std::string>();
        }
        out.emplace(subreddit, std::move(g));
    }
    return out;
}

LinkResult link_threads(std::vector<Post> posts, std::vector<Comment> comments) {
    std::unordered_map<std::string, std::size_t> post_index;
    LinkResult out;
    out.threads.reserve(posts.size());
    for (auto& p : posts) {
        post_index.emplace(p.id, out.threads.size());
        out.threads.push_back({std::move(p), {}});
    }
    for (auto& c : comments) {
        const auto it = post_index.find(c.parent_id);
        if (it == post_index.end()) {
            out.orphans.push_back(std::move(c));
        } else {
            out.threads[it->second].comments.push_back(std::move(c));
        }
    }
    for (auto& t : out.threads) {
        std::sort(t.comments.begin(), t.comments.end(), [](const Comment& a, const Comment& b) {
            if (a.created_utc != b.created_utc) return a.created_utc < b.created_utc;
            return a.comment_id < b.comment_id;
        });
    }
    std::sort(out.threads.begin(), out.threads.end(),
              [](const Thread& a, const Thread& b) { return a.post.id < b.post.id; });
    std::sort(out.orphans.begin(), out.orphans.end(),
              [](const Comment& a, const Comment& b) { return a.comment_id < b.comment_id; });
    return out;
}

std::vector<Post> keyword_filter(const std::vector<Post>& posts,
                                 const std::vector<std::string>& keywords) {
    if (keywords.empty()) throw DataError("keyword_filter: keyword list must be nonempty");
    std::vector<std::vector<std::string>> phrases;
    phrases.reserve(keywords.size());
    for (const auto& k : keywords) {
        auto toks = text::tokenize(k);
        if (!toks.empty()) phrases.push_back(std::move(toks));
    }
    std::vector<Post> out;
    for (const auto& p : posts) {
        const auto tokens = text::tokenize(analysis_text(p));
        for (const auto& phrase : phrases) {
            if (text::contains_phrase(tokens, phrase)) {
                out.push_back(p);
                break;
            }
        }
    }
    return out;
}

std::vector<std::string> min_count_filter(const std::map<std::string, std::size_t>& group_sizes,
                                          std::size_t threshold) {
    if (threshold < 1) throw DataError("min_count_filter: threshold must be >= 1");
    std::vector<std::string> out;
    for (const auto& [unit, count] : group_sizes) {
        if (count >= threshold) out.push_back(unit);
    }
    return out;
}

}  // namespace corpuslens::corpus
