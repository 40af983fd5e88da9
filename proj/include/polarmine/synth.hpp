#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "polarmine/gazetteer.hpp"
#include "polarmine/ptr.hpp"
#include "polarmine/tweet.hpp"

namespace polarmine {

struct SynthConfig {
    std::uint32_t n_users = 200;
    std::uint32_t n_days = 30;
    double tweets_per_user_mean = 10.0;
    double frac_pos = 0.45;
    double frac_neg = 0.45;
    double frac_neutral = 0.10;
    std::uint32_t vocab_per_class = 12;
    std::uint32_t shared_vocab = 20;
    double noise_rate = 0.05;        // planted user emits an opposite-class tag
    double shared_pad_rate = 0.25;   // planted tweet also carries a shared tag
    double location_rate = 0.6;      // user gets a free-text location
    std::uint32_t seed_tags_per_class = 3;
    std::uint64_t rng_seed = 1;

    void validate() const;  // throws ConfigError
};

struct GroundTruth {
    std::map<std::string, Assignment> users;
    std::map<std::string, Assignment> hashtags;
    std::map<std::string, Assignment> tweets;  // intended class per tweet
};

struct SynthResult {
    Corpus corpus;
    GroundTruth truth;
    HashtagClassMap seeds;  // first seed_tags_per_class of each class vocabulary
};

// Deterministic in rng_seed and independent of thread count (counter-based
// generator keyed by (rng_seed, user, tweet)).
SynthResult generate(const SynthConfig& config, const Gazetteer& gz, unsigned n_threads = 1);

struct TruthScore {
    double user_precision = 1.0;
    double user_recall = 0.0;
    double hashtag_precision = 1.0;
    double hashtag_recall = 0.0;
    double recall_pos = 0.0;  // per-class user recall
    double recall_neg = 0.0;
};

// Precision/recall of non-Unpolarized assignments against the planted truth.
// Vacuous precision (nothing assigned) reports as 1.0.
TruthScore score_against_truth(const PtrState& state, const GroundTruth& truth);

void write_truth_jsonl(std::ostream& out, const GroundTruth& truth);

}  // namespace polarmine
