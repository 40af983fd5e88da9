#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polarmine/gazetteer.hpp"
#include "polarmine/tweet.hpp"

namespace polarmine {

// Two polarity classes plus the explicit non-assignment state.
enum class Assignment { Pos, Neg, None };

// Per-class hashtag sets; pos and neg must stay disjoint.
struct HashtagClassMap {
    std::set<std::string> pos;
    std::set<std::string> neg;

    bool disjoint() const;
    bool contains(const std::string& h) const { return pos.count(h) || neg.count(h); }
    bool operator==(const HashtagClassMap&) const = default;
};

struct PtrConfig {
    double beta = 0.005;
    double dominance_factor = 2.0;
    int max_iterations = 10;
    std::uint32_t min_class_tweets = 1;
};

struct UserPolarity {
    Assignment assignment = Assignment::None;
    std::uint32_t n_pos = 0;  // polarized-tweet counts
    std::uint32_t n_neg = 0;
};

struct HashtagScores {
    double s_pos = 0.0;
    double s_neg = 0.0;
};

struct HashtagReportRow {
    Assignment cls = Assignment::None;
    double s_pos = 0.0;
    double s_neg = 0.0;
    int iteration_added = 0;  // 0 = seed
};

struct IterationStats {
    int iteration = 0;
    std::size_t map_pos = 0;
    std::size_t map_neg = 0;
    std::size_t tweets_pos = 0;
    std::size_t tweets_neg = 0;
    std::size_t users_pos = 0;
    std::size_t users_neg = 0;
};

struct PtrState {
    int iterations = 0;
    HashtagClassMap map;
    std::vector<Assignment> tweet_assignment;  // aligned with corpus order
    std::map<std::string, UserPolarity> user_polarity;
    std::map<std::string, HashtagReportRow> hashtag_report;
    std::vector<IterationStats> history;
};

// A tweet gets class c iff its hashtags intersect H_c and no other class set.
std::vector<Assignment> tw_class(const Corpus& corpus, const HashtagClassMap& map,
                                 unsigned n_threads = 1);

// A user gets class c iff n_c >= dominance_factor * n_c' for every other
// class and n_c >= min_class_tweets.
std::map<std::string, UserPolarity> us_class(const std::vector<Assignment>& tweet_assignment,
                                             const Corpus& corpus, const PtrConfig& config);

// S_c(h) = f_c(h) * prod_{c' != c} (1 - f_{c'}(h)), where f_c is the fraction
// of tweets authored by class-c users that contain h. Empty pool -> 0.
double score_conjunct(const std::string& h, Assignment c,
                      const std::vector<Assignment>& tweet_assignment,
                      const std::map<std::string, UserPolarity>& user_polarity,
                      const Corpus& corpus);

// Removes any hashtag whose normalized form equals a gazetteer city/country
// name or country code.
HashtagClassMap strip_location_hashtags(const HashtagClassMap& map, const Gazetteer& gz);

// Hashtag adoption: h joins class c iff S_c(h) > beta * S_{c'}(h) for every
// other class and c is the strict argmax of S. Seeds are always retained.
// Returns `prev` unchanged when either class has no polarized user.
HashtagClassMap ht_class(const std::map<std::string, UserPolarity>& user_polarity,
                         const Corpus& corpus, const PtrConfig& config, const Gazetteer& gz,
                         const HashtagClassMap& seeds, const HashtagClassMap& prev,
                         std::map<std::string, HashtagScores>* scores_out = nullptr);

// Throws ConfigError on empty/overlapping seeds, seeds that are location
// names, or seeds matching zero tweets.
void validate_seeds(const HashtagClassMap& seeds, const Corpus& corpus, const Gazetteer& gz);

// Iterates tw_class -> us_class -> ht_class until the hashtag map repeats or
// max_iterations is hit. Pure in (corpus, seeds, config, gz); n_threads must
// not change the result.
PtrState ptr_run(const Corpus& corpus, const HashtagClassMap& seeds, const PtrConfig& config,
                 const Gazetteer& gz, unsigned n_threads = 1);

// (tweet_fraction, user_fraction) of non-Unpolarized assignments. Throws
// ConfigError on an empty corpus.
std::pair<double, double> coverage_stats(const PtrState& state, const Corpus& corpus);

}  // namespace polarmine
