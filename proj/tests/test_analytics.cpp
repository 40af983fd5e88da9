#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "polarmine/analytics.hpp"
#include "polarmine/errors.hpp"

using namespace polarmine;
using namespace polarmine::testing;

namespace {

EnrichedTweet enriched(std::string id, std::string user, Timestamp ts,
                       std::optional<std::string> home_country = std::nullopt,
                       std::vector<std::string> mention_countries = {},
                       std::vector<std::string> tags = {},
                       std::optional<std::string> home_city = std::nullopt) {
    EnrichedTweet e;
    e.base = make_tweet(std::move(id), std::move(user), ts, std::move(tags));
    if (home_country) {
        ResolvedLocation loc;
        loc.country_code = home_country;
        loc.city_id = home_city;
        loc.source = LocationSource::FreeText;
        e.user_location = loc;
    }
    for (auto& c : mention_countries) {
        ResolvedLocation m;
        m.country_code = std::move(c);
        m.source = LocationSource::TextMention;
        e.mentioned_locations.push_back(std::move(m));
    }
    return e;
}

EnrichedCorpus enriched_corpus(std::vector<EnrichedTweet> tweets) {
    EnrichedCorpus c;
    c.tweets = std::move(tweets);
    std::sort(c.tweets.begin(), c.tweets.end(), [](const EnrichedTweet& a, const EnrichedTweet& b) {
        if (a.base.created_at != b.base.created_at) return a.base.created_at < b.base.created_at;
        return a.base.tweet_id < b.base.tweet_id;
    });
    c.stats.n_total = c.tweets.size();
    c.stats.n_relevant = c.tweets.size();
    return c;
}

DayFrequencyMatrix matrix(std::vector<std::string> tags,
                          std::vector<std::vector<std::uint64_t>> counts) {
    DayFrequencyMatrix m;
    m.hashtags = std::move(tags);
    m.counts = std::move(counts);
    for (std::size_t d = 0; d < (m.counts.empty() ? 0 : m.counts[0].size()); ++d)
        m.days.push_back(Day{std::int32_t(17000 + d)});
    return m;
}

constexpr Timestamp kDay0 = 1441065600;  // 2015-09-01T00:00:00Z

}  // namespace

TEST_CASE("sentiment index ratio") {
    SentimentIndex large{213920, 104126};
    CHECK(large.rho() == doctest::Approx(2.0544).epsilon(1e-4));

    CHECK((SentimentIndex{0, 5}).rho() == doctest::Approx(0.0));
    CHECK((SentimentIndex{7, 7}).rho() == doctest::Approx(1.0));
    CHECK(!(SentimentIndex{3, 0}).has_rho());
    SentimentIndex undefined{3, 0};
    CHECK_THROWS_AS(undefined.rho(), ConfigError);

    std::map<std::string, UserPolarity> users;
    users["a"] = {Assignment::Pos, 2, 0};
    users["b"] = {Assignment::Pos, 3, 1};
    users["c"] = {Assignment::Neg, 0, 4};
    users["d"] = {Assignment::None, 1, 1};
    auto idx = rho(users);
    CHECK(idx.n_pos == 2);
    CHECK(idx.n_neg == 1);
    CHECK(idx.rho() == doctest::Approx(2.0));

    users["c"].assignment = Assignment::None;
    CHECK_THROWS_AS(rho(users), ConfigError);
}

TEST_CASE("sentiment index is invariant under count scaling") {
    for (std::uint64_t k = 1; k <= 50; ++k) {
        SentimentIndex idx{3 * k, 2 * k};
        CHECK(idx.rho() == doctest::Approx(1.5));
    }
}

TEST_CASE("rho_by_region") {
    auto corpus = enriched_corpus({
        enriched("1", "u1", kDay0 + 10, "DE", {}, {}, "2950159"),
        enriched("2", "u2", kDay0 + 20, "DE", {}, {}, "2950159"),
        enriched("3", "u3", kDay0 + 30, "DE", {}, {}, "2911298"),
        enriched("4", "u4", kDay0 + 40, "GB"),
        enriched("5", "u5", kDay0 + 50),  // never located
        // u1 later appears elsewhere; first located tweet wins.
        enriched("6", "u1", kDay0 + 60, "FR"),
    });
    std::map<std::string, UserPolarity> users;
    users["u1"] = {Assignment::Pos, 1, 0};
    users["u2"] = {Assignment::Pos, 1, 0};
    users["u3"] = {Assignment::Neg, 0, 1};
    users["u4"] = {Assignment::Pos, 1, 0};
    users["u5"] = {Assignment::Neg, 0, 1};

    SUBCASE("country level with min_users") {
        auto by_country = rho_by_region(users, corpus, RegionLevel::Country, 2);
        REQUIRE(by_country.size() == 1);  // GB has only 1 polarized user; u5 has no home
        CHECK(by_country.at("DE").n_pos == 2);
        CHECK(by_country.at("DE").n_neg == 1);
    }
    SUBCASE("min_users = 1 keeps GB") {
        auto by_country = rho_by_region(users, corpus, RegionLevel::Country, 1);
        REQUIRE(by_country.size() == 2);
        CHECK(by_country.at("GB").n_pos == 1);
        CHECK(by_country.at("GB").n_neg == 0);
        CHECK(!by_country.at("GB").has_rho());  // counts reported, ratio undefined
    }
    SUBCASE("city level keys and country-only homes dropped") {
        auto by_city = rho_by_region(users, corpus, RegionLevel::City, 1);
        REQUIRE(by_city.count("DE/2950159") == 1);
        CHECK(by_city.at("DE/2950159").n_pos == 2);
        REQUIRE(by_city.count("DE/2911298") == 1);
        CHECK(by_city.at("DE/2911298").n_neg == 1);
        CHECK(by_city.count("GB") == 0);  // u4 has no city
    }
}

TEST_CASE("classify_perception") {
    auto own = enriched("1", "u", kDay0, "DE", {"DE", "GR"});
    CHECK(classify_perception(own, "DE") == PerceptionScope::Internal);
    auto foreign = enriched("2", "u", kDay0, "DE", {"GR", "HU"});
    CHECK(classify_perception(foreign, "DE") == PerceptionScope::External);
    auto none = enriched("3", "u", kDay0, "DE", {});
    CHECK(none.mentioned_locations.empty());
    CHECK(classify_perception(none, "DE") == PerceptionScope::External);

    // Partition: every tweet is exactly one of the two scopes.
    for (const auto& t : {own, foreign, none}) {
        bool internal = classify_perception(t, "DE") == PerceptionScope::Internal;
        bool external = classify_perception(t, "DE") == PerceptionScope::External;
        CHECK(internal != external);
    }
}

TEST_CASE("rho_by_perception") {
    auto corpus = enriched_corpus({
        enriched("1", "u1", kDay0 + 10, "DE", {"DE"}),
        enriched("2", "u2", kDay0 + 20, "DE", {"GR"}),
        enriched("3", "u3", kDay0 + 30, "DE", {"DE", "GR"}),
        enriched("4", "u4", kDay0 + 40, "GB", {"GB"}),
    });
    std::map<std::string, UserPolarity> users;
    users["u1"] = {Assignment::Pos, 1, 0};
    users["u2"] = {Assignment::Neg, 0, 1};
    users["u3"] = {Assignment::Neg, 0, 1};
    users["u4"] = {Assignment::Pos, 1, 0};

    auto internal = rho_by_perception(users, corpus, PerceptionScope::Internal);
    REQUIRE(internal.count("DE") == 1);
    CHECK(internal.at("DE").n_pos == 1);  // u1
    CHECK(internal.at("DE").n_neg == 1);  // u3 (mentions both, still internal)
    CHECK(internal.at("GB").n_pos == 1);

    auto external = rho_by_perception(users, corpus, PerceptionScope::External);
    REQUIRE(external.count("DE") == 1);
    CHECK(external.at("DE").n_pos == 0);
    CHECK(external.at("DE").n_neg == 1);  // u2 only
    CHECK(external.count("GB") == 0);
}

TEST_CASE("volume_series") {
    auto corpus = enriched_corpus({
        enriched("1", "u1", kDay0 + 10, "DE", {"GR"}),
        enriched("2", "u2", kDay0 + 20, "DE", {"GR", "GR", "HU"}),
        enriched("3", "u3", kDay0 + 86400 + 30, "GB", {}),
        enriched("4", "u4", kDay0 + 86400 + 40),
    });
    const Day d0 = day_of(kDay0);
    const Day d1 = day_of(kDay0 + 86400);

    SUBCASE("all") {
        auto s = volume_series(corpus, VolumeGroupBy::All);
        CHECK(s.at({"all", d0}) == 2);
        CHECK(s.at({"all", d1}) == 2);
        std::uint64_t total = 0;
        for (const auto& [k, v] : s) total += v;
        CHECK(total == corpus.tweets.size());  // conservation
    }
    SUBCASE("user country") {
        auto s = volume_series(corpus, VolumeGroupBy::UserCountry);
        CHECK(s.at({"DE", d0}) == 2);
        CHECK(s.at({"GB", d1}) == 1);
        CHECK(s.size() == 2);  // tweet without user location contributes nothing
    }
    SUBCASE("mention country with per-tweet dedup") {
        auto s = volume_series(corpus, VolumeGroupBy::MentionCountry);
        CHECK(s.at({"GR", d0}) == 2);  // tweet 2's double mention counts once
        CHECK(s.at({"HU", d0}) == 1);
        CHECK(s.size() == 2);
    }
    SUBCASE("filter restricts keys") {
        auto s = volume_series(corpus, VolumeGroupBy::MentionCountry,
                               std::set<std::string>{"HU"});
        CHECK(s.size() == 1);
        CHECK(s.at({"HU", d0}) == 1);
    }
}

TEST_CASE("sentiment_mention_series") {
    auto corpus = enriched_corpus({
        enriched("1", "u1", kDay0 + 10, std::nullopt, {"GR"}),
        enriched("2", "u2", kDay0 + 20, std::nullopt, {"GR"}),
        enriched("3", "u3", kDay0 + 30, std::nullopt, {"HU"}),
        enriched("4", "u4", kDay0 + 86400 + 10, std::nullopt, {"GR"}),
        enriched("5", "u5", kDay0 + 86400 + 20, std::nullopt, {"GR"}),
    });
    std::map<std::string, Assignment> polarity = {
        {"1", Assignment::Pos}, {"2", Assignment::Neg}, {"3", Assignment::Pos},
        {"4", Assignment::Pos}, {"5", Assignment::None},
    };
    auto s = sentiment_mention_series(corpus, polarity, "GR");
    REQUIRE(s.size() == 2);
    using Counts = std::pair<std::uint64_t, std::uint64_t>;
    CHECK(s.at(day_of(kDay0)) == Counts{1, 1});
    CHECK(s.at(day_of(kDay0 + 86400)) == Counts{1, 0});
}

TEST_CASE("split_window") {
    auto corpus = enriched_corpus({
        enriched("1", "u1", kDay0 + 10, "DE", {"GR"}),
        enriched("2", "u2", kDay0 + 20),
        enriched("3", "u1", kDay0 + 30),
        enriched("4", "u3", kDay0 + 40),
    });

    SUBCASE("pivot equal to a timestamp goes after") {
        auto [before, after] = split_window(corpus, kDay0 + 30);
        CHECK(before.size() == 2);
        CHECK(after.size() == 2);
        CHECK(after.tweets.front().base.tweet_id == "3");
        CHECK(before.size() + after.size() == corpus.size());
        CHECK(before.stats.n_users == 2);
        CHECK(after.stats.n_users == 2);  // u1 appears on both sides
        CHECK(before.stats.n_with_user_location == 1);
        CHECK(before.stats.n_with_mentioned_location == 1);
        CHECK(after.stats.n_with_user_location == 0);
    }
    SUBCASE("boundary pivots keep the partition total") {
        auto [before, after] = split_window(corpus, kDay0 + 10);
        CHECK(before.size() == 0);
        CHECK(after.size() == 4);
        auto [b2, a2] = split_window(corpus, kDay0 + 40);
        CHECK(b2.size() == 3);
        CHECK(a2.size() == 1);
    }
    SUBCASE("pivot outside the window is rejected") {
        CHECK_THROWS_AS(split_window(corpus, kDay0), ConfigError);
        CHECK_THROWS_AS(split_window(corpus, kDay0 + 41), ConfigError);
        CHECK_THROWS_AS(split_window(EnrichedCorpus{}, kDay0), ConfigError);
    }
}

TEST_CASE("build_day_frequency_matrix is contiguous") {
    auto corpus = enriched_corpus({
        enriched("1", "u1", kDay0, std::nullopt, {}, {"a", "b"}),
        enriched("2", "u2", kDay0 + 3 * 86400, std::nullopt, {}, {"a"}),
    });
    auto m = build_day_frequency_matrix(corpus);
    REQUIRE(m.days.size() == 4);  // gap days present with zero counts
    REQUIRE(m.hashtags == std::vector<std::string>{"a", "b"});
    CHECK(m.counts[0] == std::vector<std::uint64_t>{1, 0, 0, 1});
    CHECK(m.counts[1] == std::vector<std::uint64_t>{1, 0, 0, 0});
}

TEST_CASE("variance ranking hand example") {
    auto m = matrix({"h1", "h2"}, {{10, 0}, {5, 5}});
    auto norm = two_pass_normalize(m);
    CHECK(norm[0][0] == doctest::Approx(1.0));
    CHECK(norm[0][1] == doctest::Approx(0.0));
    CHECK(norm[1][0] == doctest::Approx(0.25));
    CHECK(norm[1][1] == doctest::Approx(0.75));

    auto ranked = hashtag_variance_ranking(m, 10);
    REQUIRE(ranked.size() == 2);  // k beyond the matrix returns everything
    CHECK(ranked[0].first == "h1");
    CHECK(ranked[0].second == doctest::Approx(0.25));
    CHECK(ranked[1].first == "h2");
    CHECK(ranked[1].second == doctest::Approx(0.0625));

    auto top1 = hashtag_variance_ranking(m, 1);
    REQUIRE(top1.size() == 1);
    CHECK(top1[0].first == "h1");
}

TEST_CASE("variance ranking edge rules") {
    // A perfectly uniform row has zero variance.
    auto uniform = matrix({"flat"}, {{4, 4, 4, 4}});
    auto ranked = hashtag_variance_ranking(uniform, 5);
    REQUIRE(ranked.size() == 1);
    CHECK(ranked[0].second == doctest::Approx(0.0));

    // Equal variances break ties lexicographically.
    auto tied = matrix({"zeta", "alpha"}, {{1, 0}, {0, 1}});
    auto order = hashtag_variance_ranking(tied, 2);
    CHECK(order[0].first == "alpha");
    CHECK(order[1].first == "zeta");

    CHECK_THROWS_AS(hashtag_variance_ranking(uniform, 0), ConfigError);
    auto zeros = matrix({"h"}, {{0, 0}});
    CHECK_THROWS_AS(hashtag_variance_ranking(zeros, 1), ConfigError);
}

TEST_CASE("two_pass_normalize row sums on random matrices") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n_tags = 1 + rng() % 8;
        std::size_t n_days = 1 + rng() % 12;
        std::vector<std::vector<std::uint64_t>> counts(n_tags,
                                                       std::vector<std::uint64_t>(n_days, 0));
        std::vector<std::string> tags;
        for (std::size_t t = 0; t < n_tags; ++t) {
            tags.push_back("h" + std::to_string(t));
            for (std::size_t d = 0; d < n_days; ++d) counts[t][d] = rng() % 5;
        }
        auto m = matrix(tags, counts);
        auto norm = two_pass_normalize(m);
        for (std::size_t t = 0; t < n_tags; ++t) {
            double sum = 0.0;
            bool any = false;
            for (std::size_t d = 0; d < n_days; ++d) {
                sum += norm[t][d];
                any |= counts[t][d] > 0;
            }
            if (any) CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
            else CHECK(sum == doctest::Approx(0.0));
        }
    }
}

TEST_CASE("variance ranking is stable under day column count scaling") {
    // Multiplying one day's raw counts by a constant leaves pass-1 shares,
    // and hence the ranking, unchanged.
    auto m = matrix({"a", "b", "c"}, {{3, 1, 0}, {1, 1, 1}, {0, 2, 5}});
    auto base = hashtag_variance_ranking(m, 3);
    for (auto& row : m.counts) row[1] *= 7;
    auto scaled = hashtag_variance_ranking(m, 3);
    REQUIRE(base.size() == scaled.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(base[i].first == scaled[i].first);
        CHECK(base[i].second == doctest::Approx(scaled[i].second));
    }
}
