#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "corpuslens/corpus.hpp"
#include "corpuslens/errors.hpp"
#include "corpuslens/util.hpp"

using namespace corpuslens;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name, const std::string& content) {
    const fs::path p = fs::temp_directory_path() / ("corpuslens_test_" + name);
    util::write_file(p, content);
    return p;
}

std::string post_line(const std::string& id, const std::string& title, int num_comments = 0,
                      int score = 0, double ratio = 0.9) {
    return "{\"id\":\"" + id + "\",\"subreddit\":\"NYCbike\",\"title\":\"" + title +
           "\",\"selftext\":\"body\",\"author\":\"a\",\"created_utc\":1750000000,"
           "\"num_comments\":" + std::to_string(num_comments) + ",\"score\":" +
           std::to_string(score) + ",\"upvote_ratio\":" + std::to_string(ratio) + "}";
}

}  // namespace

TEST_CASE("load_posts parses a full record") {
    const auto p = temp_file("posts1.jsonl",
                             "{\"id\":\"1ou8czt\",\"subreddit\":\"NYCbike\","
                             "\"title\":\"3rd Ave Manhattan - New Bike lane finally underway\","
                             "\"selftext\":\"They just started painting the new lane last night.\","
                             "\"author\":\"rider\",\"created_utc\":1759400000,"
                             "\"num_comments\":8,\"score\":42,\"upvote_ratio\":0.94,"
                             "\"permalink\":\"https://example.org/x\"}\n");
    const auto res = corpus::load_posts(p);
    REQUIRE(res.posts.size() == 1);
    const auto& post = res.posts[0];
    CHECK(post.id == "1ou8czt");
    CHECK(post.num_comments == 8);
    CHECK(post.score == 42);
    CHECK(post.upvote_ratio == doctest::Approx(0.94));
    CHECK(post.source_link == "https://example.org/x");
    CHECK(res.rejects.empty());
    CHECK(res.total_lines == 1);
}

TEST_CASE("load_posts on an empty file") {
    const auto res = corpus::load_posts(temp_file("posts_empty.jsonl", ""));
    CHECK(res.posts.empty());
    CHECK(res.rejects.empty());
    CHECK(res.total_lines == 0);
}

TEST_CASE("load_posts records malformed lines with their line number") {
    const auto p = temp_file("posts_bad.jsonl", post_line("a", "t1") + "\n" +
                                                   post_line("b", "t2") + "\n" +
                                                   "{not json}\n" + post_line("c", "t3") + "\n");
    const auto res = corpus::load_posts(p);
    CHECK(res.posts.size() == 3);
    REQUIRE(res.rejects.size() == 1);
    CHECK(res.rejects[0].line == 3);
    CHECK(res.posts.size() + res.rejects.size() + res.duplicates == res.total_lines);
}

TEST_CASE("load_posts rejects invariant violations and missing fields") {
    const auto p = temp_file(
        "posts_inv.jsonl",
        "{\"id\":\"\",\"subreddit\":\"s\",\"title\":\"t\",\"selftext\":\"\",\"author\":\"a\","
        "\"created_utc\":1,\"num_comments\":0,\"score\":0,\"upvote_ratio\":0.5}\n"
        "{\"id\":\"x\",\"subreddit\":\"s\",\"title\":\"t\",\"selftext\":\"\",\"author\":\"a\","
        "\"created_utc\":1,\"num_comments\":0,\"score\":0,\"upvote_ratio\":1.5}\n"
        "{\"id\":\"y\",\"subreddit\":\"s\",\"title\":\"t\"}\n");
    const auto res = corpus::load_posts(p);
    CHECK(res.posts.empty());
    CHECK(res.rejects.size() == 3);
}

TEST_CASE("load_posts resolves duplicate ids last-wins") {
    const auto p = temp_file("posts_dup.jsonl", post_line("a", "first") + "\n" +
                                                   post_line("a", "second", 5) + "\n");
    const auto res = corpus::load_posts(p);
    REQUIRE(res.posts.size() == 1);
    CHECK(res.posts[0].title == "second");
    CHECK(res.duplicates == 1);
    CHECK(res.posts.size() + res.rejects.size() + res.duplicates == res.total_lines);
}

TEST_CASE("link_threads attaches by parent id and reports orphans") {
    std::vector<corpus::Post> posts(1);
    posts[0].id = "p";
    std::vector<corpus::Comment> comments(3);
    comments[0] = {"c1", "p", "b", "a", 200, 0};
    comments[1] = {"c2", "p", "b", "a", 100, 0};
    comments[2] = {"c3", "q", "b", "a", 100, 0};
    const auto linked = corpus::link_threads(posts, comments);
    REQUIRE(linked.threads.size() == 1);
    REQUIRE(linked.threads[0].comments.size() == 2);
    // ascending created_utc
    CHECK(linked.threads[0].comments[0].comment_id == "c2");
    CHECK(linked.threads[0].comments[1].comment_id == "c1");
    REQUIRE(linked.orphans.size() == 1);
    CHECK(linked.orphans[0].comment_id == "c3");
}

TEST_CASE("link_threads conserves comments and handles empty threads") {
    std::vector<corpus::Post> posts(2);
    posts[0].id = "a";
    posts[1].id = "b";
    std::vector<corpus::Comment> comments;
    for (int i = 0; i < 20; ++i) {
        corpus::Comment c;
        c.comment_id = "c" + std::to_string(i);
        c.parent_id = i % 3 == 0 ? "a" : (i % 3 == 1 ? "zzz" : "b");
        c.created_utc = 100 - i;
        comments.push_back(c);
    }
    const auto linked = corpus::link_threads(posts, comments);
    std::size_t attached = 0;
    for (const auto& t : linked.threads) attached += t.comments.size();
    CHECK(attached + linked.orphans.size() == comments.size());

    const auto empty_link = corpus::link_threads(posts, {});
    CHECK(empty_link.threads.size() == 2);
    CHECK(empty_link.threads[0].comments.empty());
}

TEST_CASE("link_threads ties on created_utc break by comment id") {
    std::vector<corpus::Post> posts(1);
    posts[0].id = "p";
    std::vector<corpus::Comment> comments(2);
    comments[0] = {"z9", "p", "b", "a", 100, 0};
    comments[1] = {"a1", "p", "b", "a", 100, 0};
    const auto linked = corpus::link_threads(posts, comments);
    CHECK(linked.threads[0].comments[0].comment_id == "a1");
}

TEST_CASE("keyword_filter matches whole tokens only") {
    std::vector<corpus::Post> posts(3);
    posts[0].id = "a";
    posts[0].title = "New bike lane on 3rd Ave";
    posts[1].id = "b";
    posts[1].title = "I like my motorbike";
    posts[2].id = "c";
    posts[2].title = "";
    const auto kept = corpus::keyword_filter(posts, {"bike"});
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].id == "a");

    // idempotence
    const auto twice = corpus::keyword_filter(kept, {"bike"});
    CHECK(twice.size() == kept.size());

    CHECK_THROWS_AS(corpus::keyword_filter(posts, {}), DataError);
}

TEST_CASE("min_count_filter is boundary inclusive") {
    const std::map<std::string, std::size_t> sizes{{"A", 30}, {"B", 29}};
    CHECK(corpus::min_count_filter(sizes, 30) == std::vector<std::string>{"A"});
    CHECK(corpus::min_count_filter(sizes, 1) == std::vector<std::string>{"A", "B"});
    CHECK_THROWS_AS(corpus::min_count_filter(sizes, 0), DataError);
}

TEST_CASE("geo map loads and validates") {
    const auto p = temp_file("geo.json",
                             "{\"NYCbike\": {\"region\": \"US\", \"unit\": \"New York\","
                             " \"city\": \"New York\"},"
                             " \"berlinbikes\": {\"region\": \"EU\", \"unit\": \"Germany\","
                             " \"city\": null}}");
    const auto geo = corpus::load_geo_map(p);
    REQUIRE(geo.size() == 2);
    CHECK(geo.at("NYCbike").region == corpus::Region::US);
    CHECK(geo.at("berlinbikes").unit == "Germany");
    CHECK(geo.at("berlinbikes").city.empty());

    const auto bad = temp_file("geo_bad.json",
                               "{\"x\": {\"region\": \"ASIA\", \"unit\": \"u\"}}");
    CHECK_THROWS_AS(corpus::load_geo_map(bad), DataError);
}

TEST_CASE("analysis text uses title alone when selftext is empty") {
    corpus::Post p;
    p.title = "Title";
    CHECK(corpus::analysis_text(p) == "Title");
    p.selftext = "Body";
    CHECK(corpus::analysis_text(p) == "Title Body");
}
