#pragma once

#include <random>
#include <string>
#include <vector>

#include "polarmine/gazetteer.hpp"
#include "polarmine/ptr.hpp"
#include "polarmine/tweet.hpp"

namespace polarmine::testing {

inline const Gazetteer& fixture_gazetteer() {
    static Gazetteer gz = Gazetteer::load(std::string(POLARMINE_DATA_DIR) + "/mini_gazetteer.tsv");
    return gz;
}

inline TweetRecord make_tweet(std::string id, std::string user, Timestamp ts,
                              std::vector<std::string> tags, std::string text = "") {
    TweetRecord t;
    t.tweet_id = std::move(id);
    t.author_id = std::move(user);
    t.created_at = ts;
    t.hashtags = std::move(tags);
    t.text = std::move(text);
    return t;
}

inline Corpus make_corpus(std::vector<TweetRecord> tweets) {
    Corpus c;
    c.tweets = std::move(tweets);
    std::sort(c.tweets.begin(), c.tweets.end(), [](const TweetRecord& a, const TweetRecord& b) {
        if (a.created_at != b.created_at) return a.created_at < b.created_at;
        return a.tweet_id < b.tweet_id;
    });
    c.stats.n_total = c.tweets.size();
    c.stats.n_relevant = c.tweets.size();
    return c;
}

// Direct rule enumeration, written independently of the library path.
inline std::vector<Assignment> naive_tw_class(const Corpus& corpus, const HashtagClassMap& map) {
    std::vector<Assignment> out;
    for (const auto& t : corpus.tweets) {
        int n_pos = 0, n_neg = 0;
        for (const auto& h : t.hashtags) {
            for (const auto& p : map.pos)
                if (p == h) ++n_pos;
            for (const auto& n : map.neg)
                if (n == h) ++n_neg;
        }
        if (n_pos > 0 && n_neg == 0) out.push_back(Assignment::Pos);
        else if (n_neg > 0 && n_pos == 0) out.push_back(Assignment::Neg);
        else out.push_back(Assignment::None);
    }
    return out;
}

inline std::map<std::string, Assignment> naive_us_class(const std::vector<Assignment>& tweets,
                                                        const Corpus& corpus,
                                                        const PtrConfig& cfg) {
    std::map<std::string, std::pair<int, int>> counts;
    for (std::size_t i = 0; i < corpus.tweets.size(); ++i) {
        auto& c = counts[corpus.tweets[i].author_id];
        if (tweets[i] == Assignment::Pos) ++c.first;
        if (tweets[i] == Assignment::Neg) ++c.second;
    }
    std::map<std::string, Assignment> out;
    for (const auto& [u, c] : counts) {
        bool pos = c.first > 0 && c.first >= cfg.dominance_factor * c.second &&
                   c.first >= int(cfg.min_class_tweets);
        bool neg = c.second > 0 && c.second >= cfg.dominance_factor * c.first &&
                   c.second >= int(cfg.min_class_tweets);
        if (pos && !neg) out[u] = Assignment::Pos;
        else if (neg && !pos) out[u] = Assignment::Neg;
        else out[u] = Assignment::None;
    }
    return out;
}

// Random small corpus over a fixed non-location tag universe.
inline Corpus random_corpus(std::mt19937& rng, std::size_t max_tweets = 50,
                            std::size_t max_users = 10) {
    static const std::vector<std::string> universe = {"alpha", "bravo", "delta", "echo",
                                                      "foxtrot", "golf",  "hotel", "india1",
                                                      "juliet", "kilo"};
    std::size_t n_tweets = 1 + rng() % max_tweets;
    std::size_t n_users = 1 + rng() % max_users;
    std::vector<TweetRecord> tweets;
    for (std::size_t i = 0; i < n_tweets; ++i) {
        std::vector<std::string> tags;
        std::size_t n_tags = rng() % 4;
        for (std::size_t k = 0; k < n_tags; ++k) tags.push_back(universe[rng() % universe.size()]);
        tweets.push_back(make_tweet("t" + std::to_string(i), "u" + std::to_string(rng() % n_users),
                                    1441360800 + Timestamp(rng() % 100000), std::move(tags)));
    }
    return make_corpus(std::move(tweets));
}

inline HashtagClassMap random_map(std::mt19937& rng) {
    static const std::vector<std::string> universe = {"alpha", "bravo", "delta", "echo",
                                                      "foxtrot", "golf",  "hotel", "india1",
                                                      "juliet", "kilo"};
    HashtagClassMap map;
    for (const auto& h : universe) {
        switch (rng() % 3) {
            case 0: map.pos.insert(h); break;
            case 1: map.neg.insert(h); break;
            default: break;
        }
    }
    if (map.pos.empty()) map.pos.insert("alpha"), map.neg.erase("alpha");
    if (map.neg.empty()) map.neg.insert("kilo"), map.pos.erase("kilo");
    return map;
}

}  // namespace polarmine::testing
