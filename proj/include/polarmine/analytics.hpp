#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polarmine/geo.hpp"
#include "polarmine/ptr.hpp"
#include "polarmine/time_util.hpp"
#include "polarmine/tweet.hpp"

namespace polarmine {

// Ratio of positively to negatively polarized user counts.
struct SentimentIndex {
    std::uint64_t n_pos = 0;
    std::uint64_t n_neg = 0;

    bool has_rho() const { return n_neg > 0; }
    double rho() const;  // throws ConfigError when n_neg == 0
};

enum class PerceptionScope { Internal, External };
enum class RegionLevel { Country, City };
enum class VolumeGroupBy { UserCountry, MentionCountry, All };

// Hashtag-by-day count matrix over a contiguous day window.
struct DayFrequencyMatrix {
    std::vector<std::string> hashtags;
    std::vector<Day> days;
    std::vector<std::vector<std::uint64_t>> counts;  // [hashtag][day]
};

// Throws ConfigError when no user is assigned to the negative class.
SentimentIndex rho(const std::map<std::string, UserPolarity>& users);

// A user's home region comes from the first located tweet in corpus order.
// Keys are country codes, or "CC/city_id" at city level. Regions with fewer
// than min_users polarized users are omitted.
std::map<std::string, SentimentIndex> rho_by_region(
    const std::map<std::string, UserPolarity>& users, const EnrichedCorpus& corpus,
    RegionLevel level, std::uint64_t min_users);

// Internal iff any mentioned location falls in the author's own country.
PerceptionScope classify_perception(const EnrichedTweet& tweet, const std::string& user_country);

// Per-country index over users who authored at least one tweet of the scope.
std::map<std::string, SentimentIndex> rho_by_perception(
    const std::map<std::string, UserPolarity>& users, const EnrichedCorpus& corpus,
    PerceptionScope scope);

// (key, day) -> tweet count. A tweet mentioning k countries contributes once
// to each. Key is "all" for VolumeGroupBy::All.
std::map<std::pair<std::string, Day>, std::uint64_t> volume_series(
    const EnrichedCorpus& corpus, VolumeGroupBy groupby,
    const std::optional<std::set<std::string>>& filter = std::nullopt);

// Per-day polarized-tweet counts mentioning the country.
std::map<Day, std::pair<std::uint64_t, std::uint64_t>> sentiment_mention_series(
    const EnrichedCorpus& corpus, const std::map<std::string, Assignment>& tweet_polarity,
    const std::string& country);

// Strict partition at the pivot: created_at < pivot goes before, else after.
// Throws ConfigError when the pivot lies outside the observation window.
std::pair<EnrichedCorpus, EnrichedCorpus> split_window(const EnrichedCorpus& corpus,
                                                       Timestamp pivot);

// Hashtag frequency per day over the corpus window.
DayFrequencyMatrix build_day_frequency_matrix(const EnrichedCorpus& corpus);

// Two-pass normalization (per-day columns then per-hashtag rows), population
// variance per row, top-k descending; ties broken lexicographically.
std::vector<std::pair<std::string, double>> hashtag_variance_ranking(const DayFrequencyMatrix& m,
                                                                     std::size_t k);

// The normalized matrix after both passes (rows sum to 1 when nonzero).
std::vector<std::vector<double>> two_pass_normalize(const DayFrequencyMatrix& m);

}  // namespace polarmine
