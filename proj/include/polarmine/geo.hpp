#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polarmine/gazetteer.hpp"
#include "polarmine/tweet.hpp"

namespace polarmine {

enum class LocationSource { Gps, Place, FreeText, TextMention };

struct ResolvedLocation {
    std::optional<std::string> city_id;
    std::optional<std::string> country_code;
    LocationSource source = LocationSource::FreeText;
    // Byte offsets into the source text, [start, end).
    std::optional<std::pair<std::size_t, std::size_t>> matched_span;
};

struct EnrichedTweet {
    TweetRecord base;
    std::optional<ResolvedLocation> user_location;
    std::vector<ResolvedLocation> mentioned_locations;
};

struct EnrichedCorpus {
    std::vector<EnrichedTweet> tweets;
    CorpusStats stats;

    std::size_t size() const { return tweets.size(); }
};

// Scans text with longest-match-first n-grams (n <= 3) against the gazetteer.
// Homonyms: a co-occurring country mention constrains the country, else the
// most populous candidate wins. Country names yield country-only locations.
std::vector<ResolvedLocation> match_location_text(const std::string& text, const Gazetteer& gz);

// Priority Gps > Place > FreeText. GPS snaps to the nearest city within
// `gps_snap_km`. Returns nullopt when no source yields a match.
std::optional<ResolvedLocation> resolve_user_location(const TweetRecord& tweet, const Gazetteer& gz,
                                                      double gps_snap_km = 50.0);

// match_location_text over the tweet body, tagged TextMention.
std::vector<ResolvedLocation> extract_mentioned_locations(const TweetRecord& tweet,
                                                          const Gazetteer& gz);

// Full per-tweet enrichment with stats; `n_threads` must not affect output.
EnrichedCorpus enrich_corpus(const Corpus& corpus, const Gazetteer& gz, unsigned n_threads = 1,
                             double gps_snap_km = 50.0);

}  // namespace polarmine
