#include "polarmine/analytics.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "polarmine/errors.hpp"

namespace polarmine {

namespace {

// First located tweet in corpus order defines the user's home location.
std::map<std::string, ResolvedLocation> user_home_locations(const EnrichedCorpus& corpus) {
    std::map<std::string, ResolvedLocation> homes;
    for (const auto& e : corpus.tweets) {
        if (!e.user_location || !e.user_location->country_code) continue;
        homes.emplace(e.base.author_id, *e.user_location);
    }
    return homes;
}

}  // namespace

double SentimentIndex::rho() const {
    if (n_neg == 0) throw ConfigError("sentiment index undefined: no negative users");
    return double(n_pos) / double(n_neg);
}

SentimentIndex rho(const std::map<std::string, UserPolarity>& users) {
    SentimentIndex idx;
    for (const auto& [id, u] : users) {
        if (u.assignment == Assignment::Pos) ++idx.n_pos;
        else if (u.assignment == Assignment::Neg) ++idx.n_neg;
    }
    if (!idx.has_rho()) throw ConfigError("undefined ratio: no users in the negative class");
    return idx;
}

std::map<std::string, SentimentIndex> rho_by_region(
    const std::map<std::string, UserPolarity>& users, const EnrichedCorpus& corpus,
    RegionLevel level, std::uint64_t min_users) {
    auto homes = user_home_locations(corpus);

    std::map<std::string, SentimentIndex> table;
    for (const auto& [id, u] : users) {
        if (u.assignment == Assignment::None) continue;
        auto hit = homes.find(id);
        if (hit == homes.end()) continue;
        const auto& loc = hit->second;
        std::string key;
        if (level == RegionLevel::Country) {
            key = *loc.country_code;
        } else {
            if (!loc.city_id) continue;
            key = *loc.country_code + "/" + *loc.city_id;
        }
        auto& idx = table[key];
        if (u.assignment == Assignment::Pos) ++idx.n_pos;
        else ++idx.n_neg;
    }
    for (auto it = table.begin(); it != table.end();) {
        if (it->second.n_pos + it->second.n_neg < min_users) it = table.erase(it);
        else ++it;
    }
    return table;
}

PerceptionScope classify_perception(const EnrichedTweet& tweet, const std::string& user_country) {
    for (const auto& m : tweet.mentioned_locations)
        if (m.country_code && *m.country_code == user_country) return PerceptionScope::Internal;
    return PerceptionScope::External;
}

std::map<std::string, SentimentIndex> rho_by_perception(
    const std::map<std::string, UserPolarity>& users, const EnrichedCorpus& corpus,
    PerceptionScope scope) {
    auto homes = user_home_locations(corpus);

    // Users with at least one tweet of the requested scope.
    std::unordered_set<std::string> in_scope;
    for (const auto& e : corpus.tweets) {
        auto hit = homes.find(e.base.author_id);
        if (hit == homes.end()) continue;
        if (classify_perception(e, *hit->second.country_code) == scope)
            in_scope.insert(e.base.author_id);
    }

    std::map<std::string, SentimentIndex> table;
    for (const auto& [id, u] : users) {
        if (u.assignment == Assignment::None) continue;
        if (!in_scope.count(id)) continue;
        auto hit = homes.find(id);
        if (hit == homes.end()) continue;
        auto& idx = table[*hit->second.country_code];
        if (u.assignment == Assignment::Pos) ++idx.n_pos;
        else ++idx.n_neg;
    }
    return table;
}

std::map<std::pair<std::string, Day>, std::uint64_t> volume_series(
    const EnrichedCorpus& corpus, VolumeGroupBy groupby,
    const std::optional<std::set<std::string>>& filter) {
    std::map<std::pair<std::string, Day>, std::uint64_t> series;
    auto keep = [&](const std::string& key) {
        return !filter || filter->empty() || filter->count(key) > 0;
    };
    for (const auto& e : corpus.tweets) {
        const Day d = day_of(e.base.created_at);
        switch (groupby) {
            case VolumeGroupBy::All:
                ++series[{"all", d}];
                break;
            case VolumeGroupBy::UserCountry:
                if (e.user_location && e.user_location->country_code &&
                    keep(*e.user_location->country_code))
                    ++series[{*e.user_location->country_code, d}];
                break;
            case VolumeGroupBy::MentionCountry: {
                std::set<std::string> countries;
                for (const auto& m : e.mentioned_locations)
                    if (m.country_code) countries.insert(*m.country_code);
                for (const auto& c : countries)
                    if (keep(c)) ++series[{c, d}];
                break;
            }
        }
    }
    return series;
}

std::map<Day, std::pair<std::uint64_t, std::uint64_t>> sentiment_mention_series(
    const EnrichedCorpus& corpus, const std::map<std::string, Assignment>& tweet_polarity,
    const std::string& country) {
    std::map<Day, std::pair<std::uint64_t, std::uint64_t>> series;
    for (const auto& e : corpus.tweets) {
        bool mentions = std::any_of(
            e.mentioned_locations.begin(), e.mentioned_locations.end(),
            [&](const ResolvedLocation& m) { return m.country_code && *m.country_code == country; });
        if (!mentions) continue;
        const Day d = day_of(e.base.created_at);
        auto& [n_pos, n_neg] = series[d];
        auto it = tweet_polarity.find(e.base.tweet_id);
        if (it == tweet_polarity.end()) continue;
        if (it->second == Assignment::Pos) ++n_pos;
        else if (it->second == Assignment::Neg) ++n_neg;
    }
    return series;
}

std::pair<EnrichedCorpus, EnrichedCorpus> split_window(const EnrichedCorpus& corpus,
                                                       Timestamp pivot) {
    if (corpus.tweets.empty()) throw ConfigError("cannot split an empty corpus");
    Timestamp lo = corpus.tweets.front().base.created_at;
    Timestamp hi = lo;
    for (const auto& e : corpus.tweets) {
        lo = std::min(lo, e.base.created_at);
        hi = std::max(hi, e.base.created_at);
    }
    if (pivot < lo || pivot > hi)
        throw ConfigError("split pivot " + format_iso8601(pivot) +
                          " lies outside the observation window");

    EnrichedCorpus before, after;
    for (const auto& e : corpus.tweets) {
        if (e.base.created_at < pivot) before.tweets.push_back(e);
        else after.tweets.push_back(e);
    }
    auto fix_stats = [](EnrichedCorpus& c) {
        c.stats = {};
        c.stats.n_total = c.tweets.size();
        c.stats.n_relevant = c.tweets.size();
        std::set<std::string> users;
        for (const auto& e : c.tweets) {
            users.insert(e.base.author_id);
            if (e.user_location) ++c.stats.n_with_user_location;
            if (!e.mentioned_locations.empty()) ++c.stats.n_with_mentioned_location;
        }
        c.stats.n_users = users.size();
    };
    fix_stats(before);
    fix_stats(after);
    return {std::move(before), std::move(after)};
}

DayFrequencyMatrix build_day_frequency_matrix(const EnrichedCorpus& corpus) {
    DayFrequencyMatrix m;
    if (corpus.tweets.empty()) return m;

    Day lo = day_of(corpus.tweets.front().base.created_at);
    Day hi = lo;
    std::map<std::string, std::map<Day, std::uint64_t>> counts;
    for (const auto& e : corpus.tweets) {
        const Day d = day_of(e.base.created_at);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
        for (const auto& h : e.base.hashtags) ++counts[h][d];
    }

    for (std::int32_t d = lo.days_since_epoch; d <= hi.days_since_epoch; ++d)
        m.days.push_back(Day{d});
    for (const auto& [h, per_day] : counts) {
        m.hashtags.push_back(h);
        std::vector<std::uint64_t> row(m.days.size(), 0);
        for (const auto& [d, c] : per_day)
            row[static_cast<std::size_t>(d.days_since_epoch - lo.days_since_epoch)] = c;
        m.counts.push_back(std::move(row));
    }
    return m;
}

std::vector<std::vector<double>> two_pass_normalize(const DayFrequencyMatrix& m) {
    const std::size_t n_tags = m.hashtags.size();
    const std::size_t n_days = m.days.size();
    std::vector<std::vector<double>> norm(n_tags, std::vector<double>(n_days, 0.0));

    // Pass 1: divide each day column by that day's total; all-zero columns
    // stay zero.
    for (std::size_t d = 0; d < n_days; ++d) {
        std::uint64_t total = 0;
        for (std::size_t t = 0; t < n_tags; ++t) total += m.counts[t][d];
        if (total == 0) continue;
        for (std::size_t t = 0; t < n_tags; ++t)
            norm[t][d] = double(m.counts[t][d]) / double(total);
    }

    // Pass 2: divide each hashtag row by its row sum.
    for (std::size_t t = 0; t < n_tags; ++t) {
        double sum = 0.0;
        for (double v : norm[t]) sum += v;
        if (sum == 0.0) continue;
        for (double& v : norm[t]) v /= sum;
    }
    return norm;
}

std::vector<std::pair<std::string, double>> hashtag_variance_ranking(const DayFrequencyMatrix& m,
                                                                     std::size_t k) {
    if (k < 1) throw ConfigError("variance ranking requires k >= 1");
    bool any_nonzero = false;
    for (const auto& row : m.counts)
        for (auto c : row)
            if (c) any_nonzero = true;
    if (!any_nonzero) throw ConfigError("variance ranking on an all-zero matrix");

    const auto norm = two_pass_normalize(m);
    const std::size_t n_days = m.days.size();

    std::vector<std::pair<std::string, double>> ranked;
    ranked.reserve(m.hashtags.size());
    for (std::size_t t = 0; t < m.hashtags.size(); ++t) {
        double mean = 0.0;
        for (double v : norm[t]) mean += v;
        mean /= double(n_days);
        double var = 0.0;
        for (double v : norm[t]) var += (v - mean) * (v - mean);
        var /= double(n_days);  // population variance
        ranked.emplace_back(m.hashtags[t], var);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > k) ranked.resize(k);
    return ranked;
}

}  // namespace polarmine
