#pragma once

#include <cstdint>
#include <istream>
#include <set>
#include <string>
#include <vector>

#include "polarmine/tweet.hpp"

namespace polarmine {

struct SkipReport {
    std::uint64_t malformed_json = 0;
    std::uint64_t missing_ids = 0;
    std::uint64_t bad_timestamp = 0;
    std::uint64_t bad_coordinates = 0;
    std::uint64_t duplicate_id = 0;

    std::uint64_t total() const {
        return malformed_json + missing_ids + bad_timestamp + bad_coordinates + duplicate_id;
    }
};

// Maximal runs of [A-Za-z0-9_] after '#', ASCII-lowercased, in order of
// appearance, duplicates preserved.
std::vector<std::string> extract_hashtags(const std::string& text);

// One TweetRecord per well-formed JSON line. Malformed lines are skipped and
// counted, never fatal. Duplicate tweet_ids: last occurrence wins. Result is
// ordered by (created_at, tweet_id). `n_threads` only affects parsing speed.
Corpus parse_stream(std::istream& in, SkipReport& skips, unsigned n_threads = 1);

// Retains exactly the tweets whose hashtag list intersects topic_hashtags.
// Throws ConfigError on an empty topic set.
Corpus filter_relevant(const Corpus& corpus, const std::set<std::string>& topic_hashtags);

// One hashtag per line, '#' prefix optional, lines starting with '#' followed
// by a space or another '#' are comments; blank lines ignored.
std::set<std::string> load_topic_hashtags(const std::string& path);

}  // namespace polarmine
