#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polarmine/time_util.hpp"

namespace polarmine {

struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;
};

struct TweetRecord {
    std::string tweet_id;
    std::string author_id;
    Timestamp created_at = 0;
    std::string text;
    std::vector<std::string> hashtags;  // lowercase, no '#'
    std::optional<GeoPoint> gps;
    std::optional<std::string> place_name;
    std::optional<std::string> user_location_text;
};

struct CorpusStats {
    std::uint64_t n_total = 0;
    std::uint64_t n_relevant = 0;
    std::uint64_t n_with_user_location = 0;
    std::uint64_t n_with_mentioned_location = 0;
    std::uint64_t n_users = 0;
};

// Immutable after construction; tweets ordered by (created_at, tweet_id).
struct Corpus {
    std::vector<TweetRecord> tweets;
    CorpusStats stats;

    std::size_t size() const { return tweets.size(); }
    bool empty() const { return tweets.empty(); }
};

}  // namespace polarmine
