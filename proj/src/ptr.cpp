#include "polarmine/ptr.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "polarmine/errors.hpp"
#include "polarmine/parallel.hpp"

namespace polarmine {

namespace {

Assignment classify_tweet(const TweetRecord& t, const HashtagClassMap& map) {
    bool has_pos = false, has_neg = false;
    for (const auto& h : t.hashtags) {
        if (map.pos.count(h)) has_pos = true;
        if (map.neg.count(h)) has_neg = true;
        if (has_pos && has_neg) break;
    }
    if (has_pos && !has_neg) return Assignment::Pos;
    if (has_neg && !has_pos) return Assignment::Neg;
    return Assignment::None;
}

// Presence counts of every hashtag over the class evaluation pools: all
// relevant tweets authored by users currently assigned to the class.
struct PoolCounts {
    std::size_t pool_pos = 0;
    std::size_t pool_neg = 0;
    std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> counts;
};

PoolCounts build_pool_counts(const std::map<std::string, UserPolarity>& user_polarity,
                             const Corpus& corpus) {
    PoolCounts pc;
    for (const auto& t : corpus.tweets) {
        auto it = user_polarity.find(t.author_id);
        if (it == user_polarity.end() || it->second.assignment == Assignment::None) continue;
        const bool pos = it->second.assignment == Assignment::Pos;
        if (pos) ++pc.pool_pos; else ++pc.pool_neg;
        std::unordered_set<std::string> uniq(t.hashtags.begin(), t.hashtags.end());
        for (const auto& h : uniq) {
            auto& cnt = pc.counts[h];
            if (pos) ++cnt.first; else ++cnt.second;
        }
    }
    return pc;
}

HashtagScores scores_from_counts(const PoolCounts& pc, std::size_t in_pos, std::size_t in_neg) {
    double f_pos = pc.pool_pos ? double(in_pos) / double(pc.pool_pos) : 0.0;
    double f_neg = pc.pool_neg ? double(in_neg) / double(pc.pool_neg) : 0.0;
    HashtagScores s;
    s.s_pos = pc.pool_pos ? f_pos * (1.0 - f_neg) : 0.0;
    s.s_neg = pc.pool_neg ? f_neg * (1.0 - f_pos) : 0.0;
    return s;
}

}  // namespace

bool HashtagClassMap::disjoint() const {
    for (const auto& h : pos)
        if (neg.count(h)) return false;
    return true;
}

std::vector<Assignment> tw_class(const Corpus& corpus, const HashtagClassMap& map,
                                 unsigned n_threads) {
    std::vector<Assignment> out(corpus.tweets.size(), Assignment::None);
    parallel_chunks(corpus.tweets.size(), n_threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) out[i] = classify_tweet(corpus.tweets[i], map);
    });
    return out;
}

std::map<std::string, UserPolarity> us_class(const std::vector<Assignment>& tweet_assignment,
                                             const Corpus& corpus, const PtrConfig& config) {
    std::map<std::string, UserPolarity> users;
    for (std::size_t i = 0; i < corpus.tweets.size(); ++i) {
        auto& u = users[corpus.tweets[i].author_id];
        if (tweet_assignment[i] == Assignment::Pos) ++u.n_pos;
        else if (tweet_assignment[i] == Assignment::Neg) ++u.n_neg;
    }
    for (auto& [id, u] : users) {
        const double d = config.dominance_factor;
        const bool pos_ok = u.n_pos >= d * u.n_neg && u.n_pos >= config.min_class_tweets &&
                            u.n_pos > 0;
        const bool neg_ok = u.n_neg >= d * u.n_pos && u.n_neg >= config.min_class_tweets &&
                            u.n_neg > 0;
        if (pos_ok && !neg_ok) u.assignment = Assignment::Pos;
        else if (neg_ok && !pos_ok) u.assignment = Assignment::Neg;
        else u.assignment = Assignment::None;
    }
    return users;
}

double score_conjunct(const std::string& h, Assignment c,
                      const std::vector<Assignment>& tweet_assignment,
                      const std::map<std::string, UserPolarity>& user_polarity,
                      const Corpus& corpus) {
    (void)tweet_assignment;  // pools depend on user assignments only
    PoolCounts pc = build_pool_counts(user_polarity, corpus);
    auto it = pc.counts.find(h);
    std::size_t in_pos = it == pc.counts.end() ? 0 : it->second.first;
    std::size_t in_neg = it == pc.counts.end() ? 0 : it->second.second;
    HashtagScores s = scores_from_counts(pc, in_pos, in_neg);
    return c == Assignment::Pos ? s.s_pos : s.s_neg;
}

HashtagClassMap strip_location_hashtags(const HashtagClassMap& map, const Gazetteer& gz) {
    HashtagClassMap out;
    for (const auto& h : map.pos)
        if (!gz.is_location_name(normalize_name(h))) out.pos.insert(h);
    for (const auto& h : map.neg)
        if (!gz.is_location_name(normalize_name(h))) out.neg.insert(h);
    return out;
}

HashtagClassMap ht_class(const std::map<std::string, UserPolarity>& user_polarity,
                         const Corpus& corpus, const PtrConfig& config, const Gazetteer& gz,
                         const HashtagClassMap& seeds, const HashtagClassMap& prev,
                         std::map<std::string, HashtagScores>* scores_out) {
    bool any_pos = false, any_neg = false;
    for (const auto& [id, u] : user_polarity) {
        if (u.assignment == Assignment::Pos) any_pos = true;
        if (u.assignment == Assignment::Neg) any_neg = true;
    }
    if (!any_pos || !any_neg) return prev;

    PoolCounts pc = build_pool_counts(user_polarity, corpus);

    HashtagClassMap next;
    for (const auto& [h, cnt] : pc.counts) {
        HashtagScores s = scores_from_counts(pc, cnt.first, cnt.second);
        if (scores_out) (*scores_out)[h] = s;
        const bool pos_rule = s.s_pos > config.beta * s.s_neg;
        const bool neg_rule = s.s_neg > config.beta * s.s_pos;
        if (pos_rule && neg_rule) {
            if (s.s_pos > s.s_neg) next.pos.insert(h);
            else if (s.s_neg > s.s_pos) next.neg.insert(h);
            // exact tie: unassigned
        } else if (pos_rule) {
            next.pos.insert(h);
        } else if (neg_rule) {
            next.neg.insert(h);
        }
    }

    next = strip_location_hashtags(next, gz);
    for (const auto& h : seeds.pos) {
        next.neg.erase(h);
        next.pos.insert(h);
    }
    for (const auto& h : seeds.neg) {
        next.pos.erase(h);
        next.neg.insert(h);
    }
    return next;
}

void validate_seeds(const HashtagClassMap& seeds, const Corpus& corpus, const Gazetteer& gz) {
    if (seeds.pos.empty() || seeds.neg.empty())
        throw ConfigError("seed hashtag set is empty for at least one class");
    if (!seeds.disjoint()) throw ConfigError("seed classes overlap");
    for (const auto* set : {&seeds.pos, &seeds.neg})
        for (const auto& h : *set)
            if (gz.is_location_name(normalize_name(h)))
                throw ConfigError("seed hashtag is a location name: " + h);
    bool any = false;
    for (const auto& t : corpus.tweets) {
        for (const auto& h : t.hashtags)
            if (seeds.contains(h)) { any = true; break; }
        if (any) break;
    }
    if (!any) throw ConfigError("seed hashtags match zero tweets in the corpus");
}

PtrState ptr_run(const Corpus& corpus, const HashtagClassMap& seeds, const PtrConfig& config,
                 const Gazetteer& gz, unsigned n_threads) {
    validate_seeds(seeds, corpus, gz);

    PtrState state;
    state.map = seeds;
    for (const auto& h : seeds.pos)
        state.hashtag_report[h] = {Assignment::Pos, 0.0, 0.0, 0};
    for (const auto& h : seeds.neg)
        state.hashtag_report[h] = {Assignment::Neg, 0.0, 0.0, 0};

    for (int iter = 1; iter <= config.max_iterations; ++iter) {
        state.tweet_assignment = tw_class(corpus, state.map, n_threads);
        state.user_polarity = us_class(state.tweet_assignment, corpus, config);

        std::map<std::string, HashtagScores> scores;
        HashtagClassMap next =
            ht_class(state.user_polarity, corpus, config, gz, seeds, state.map, &scores);

        IterationStats st;
        st.iteration = iter;
        st.map_pos = next.pos.size();
        st.map_neg = next.neg.size();
        for (auto a : state.tweet_assignment) {
            if (a == Assignment::Pos) ++st.tweets_pos;
            else if (a == Assignment::Neg) ++st.tweets_neg;
        }
        for (const auto& [id, u] : state.user_polarity) {
            if (u.assignment == Assignment::Pos) ++st.users_pos;
            else if (u.assignment == Assignment::Neg) ++st.users_neg;
        }
        state.history.push_back(st);
        state.iterations = iter;

        // Report upkeep: record adoption iteration and latest scores.
        for (const auto& h : next.pos) {
            auto [it, inserted] = state.hashtag_report.emplace(
                h, HashtagReportRow{Assignment::Pos, 0.0, 0.0, iter});
            it->second.cls = Assignment::Pos;
            if (auto sit = scores.find(h); sit != scores.end()) {
                it->second.s_pos = sit->second.s_pos;
                it->second.s_neg = sit->second.s_neg;
            }
        }
        for (const auto& h : next.neg) {
            auto [it, inserted] = state.hashtag_report.emplace(
                h, HashtagReportRow{Assignment::Neg, 0.0, 0.0, iter});
            it->second.cls = Assignment::Neg;
            if (auto sit = scores.find(h); sit != scores.end()) {
                it->second.s_pos = sit->second.s_pos;
                it->second.s_neg = sit->second.s_neg;
            }
        }

        if (next == state.map) break;
        state.map = next;
    }

    // Drop report rows for hashtags no longer in the final map.
    for (auto it = state.hashtag_report.begin(); it != state.hashtag_report.end();) {
        if (!state.map.contains(it->first)) it = state.hashtag_report.erase(it);
        else ++it;
    }
    return state;
}

std::pair<double, double> coverage_stats(const PtrState& state, const Corpus& corpus) {
    if (corpus.tweets.empty()) throw ConfigError("coverage undefined on an empty corpus");
    std::size_t polarized_tweets = 0;
    for (auto a : state.tweet_assignment)
        if (a != Assignment::None) ++polarized_tweets;
    std::size_t polarized_users = 0;
    for (const auto& [id, u] : state.user_polarity)
        if (u.assignment != Assignment::None) ++polarized_users;
    double tf = double(polarized_tweets) / double(corpus.tweets.size());
    double uf = state.user_polarity.empty()
                    ? 0.0
                    : double(polarized_users) / double(state.user_polarity.size());
    return {tf, uf};
}

}  // namespace polarmine
