#include "polarmine/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "polarmine/errors.hpp"
#include "polarmine/parallel.hpp"

namespace polarmine {

namespace {

// Counter-based generator: every draw is a pure function of the key, so
// per-user generation can run on any number of threads.
struct CounterRng {
    std::uint64_t key;

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    static CounterRng keyed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                            std::uint64_t stream) {
        std::uint64_t k = mix(seed);
        k = mix(k ^ mix(a + 0x100000001ULL));
        k = mix(k ^ mix(b + 0x200000002ULL));
        k = mix(k ^ mix(stream + 0x300000003ULL));
        return CounterRng{k};
    }

    std::uint64_t next() {
        key = mix(key);
        return key;
    }

    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

std::string tag_name(const char* prefix, std::uint32_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%03u", prefix, i);
    return buf;
}

}  // namespace

void SynthConfig::validate() const {
    if (n_users == 0) throw ConfigError("synth: n_users must be positive");
    if (n_days == 0) throw ConfigError("synth: n_days must be positive");
    if (tweets_per_user_mean <= 0) throw ConfigError("synth: tweets_per_user_mean must be positive");
    const double sum = frac_pos + frac_neg + frac_neutral;
    if (frac_pos < 0 || frac_neg < 0 || frac_neutral < 0 || std::abs(sum - 1.0) > 1e-9)
        throw ConfigError("synth: class mix fractions must be in [0,1] and sum to 1");
    if (noise_rate < 0 || noise_rate >= 0.5)
        throw ConfigError("synth: noise_rate must be in [0, 0.5)");
    if (shared_pad_rate < 0 || shared_pad_rate > 1)
        throw ConfigError("synth: shared_pad_rate must be in [0, 1]");
    if (location_rate < 0 || location_rate > 1)
        throw ConfigError("synth: location_rate must be in [0, 1]");
    if (seed_tags_per_class == 0 || seed_tags_per_class > vocab_per_class)
        throw ConfigError("synth: seed_tags_per_class must be in [1, vocab_per_class]");
    if (shared_vocab == 0) throw ConfigError("synth: shared_vocab must be positive");
}

SynthResult generate(const SynthConfig& config, const Gazetteer& gz, unsigned n_threads) {
    config.validate();

    // Observation window starts mid-August 2015, like the kind of event
    // window this tooling targets; any fixed origin would do.
    constexpr Timestamp kWindowStart = 1439596800;  // 2015-08-15T00:00:00Z

    const std::uint32_t n_pos = std::uint32_t(std::llround(config.frac_pos * config.n_users));
    const std::uint32_t n_neg = std::uint32_t(std::llround(config.frac_neg * config.n_users));

    std::vector<std::string> city_names;
    for (const auto& e : gz.entries())
        if (e.kind == PlaceKind::City) city_names.push_back(e.primary_name);
    std::sort(city_names.begin(), city_names.end());

    SynthResult result;
    for (std::uint32_t i = 0; i < config.seed_tags_per_class; ++i) {
        result.seeds.pos.insert(tag_name("hope", i));
        result.seeds.neg.insert(tag_name("fear", i));
    }
    for (std::uint32_t i = 0; i < config.vocab_per_class; ++i) {
        result.truth.hashtags[tag_name("hope", i)] = Assignment::Pos;
        result.truth.hashtags[tag_name("fear", i)] = Assignment::Neg;
    }
    for (std::uint32_t i = 0; i < config.shared_vocab; ++i)
        result.truth.hashtags[tag_name("chat", i)] = Assignment::None;

    struct UserOut {
        std::vector<TweetRecord> tweets;
        std::vector<Assignment> intended;
        Assignment cls = Assignment::None;
        std::string author_id;
    };
    std::vector<UserOut> per_user(config.n_users);

    parallel_chunks(config.n_users, n_threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t u = lo; u < hi; ++u) {
            auto& out = per_user[u];
            char idbuf[24];
            std::snprintf(idbuf, sizeof idbuf, "u%06zu", u);
            out.author_id = idbuf;
            out.cls = u < n_pos                    ? Assignment::Pos
                      : u < std::size_t(n_pos) + n_neg ? Assignment::Neg
                                                       : Assignment::None;

            CounterRng meta = CounterRng::keyed(config.rng_seed, u, 0, 0);
            const double mean = config.tweets_per_user_mean;
            const std::uint32_t n_tweets =
                std::max<std::uint32_t>(1, std::uint32_t(std::llround(mean * (0.5 + meta.uniform()))));

            std::optional<std::string> location;
            if (!city_names.empty() && meta.uniform() < config.location_rate)
                location = city_names[meta.below(city_names.size())];

            for (std::uint32_t t = 0; t < n_tweets; ++t) {
                CounterRng rng = CounterRng::keyed(config.rng_seed, u, t + 1, 1);
                TweetRecord tw;
                char tbuf[40];
                std::snprintf(tbuf, sizeof tbuf, "t%06zu_%04u", u, t);
                tw.tweet_id = tbuf;
                tw.author_id = out.author_id;
                tw.created_at =
                    kWindowStart + Timestamp(rng.below(std::uint64_t(config.n_days) * 86400));
                tw.user_location_text = location;

                Assignment intended = out.cls;
                if (out.cls == Assignment::None) {
                    // Neutral users draw only from the shared vocabulary.
                    std::uint32_t n = 1 + std::uint32_t(rng.below(2));
                    for (std::uint32_t k = 0; k < n; ++k)
                        tw.hashtags.push_back(
                            tag_name("chat", std::uint32_t(rng.below(config.shared_vocab))));
                } else {
                    bool flip = rng.uniform() < config.noise_rate;
                    Assignment emit = out.cls;
                    if (flip) {
                        emit = out.cls == Assignment::Pos ? Assignment::Neg : Assignment::Pos;
                        intended = emit;
                    }
                    const char* prefix = emit == Assignment::Pos ? "hope" : "fear";
                    tw.hashtags.push_back(
                        tag_name(prefix, std::uint32_t(rng.below(config.vocab_per_class))));
                    if (rng.uniform() < config.shared_pad_rate)
                        tw.hashtags.push_back(
                            tag_name("chat", std::uint32_t(rng.below(config.shared_vocab))));
                }

                std::sort(tw.hashtags.begin(), tw.hashtags.end());
                tw.hashtags.erase(std::unique(tw.hashtags.begin(), tw.hashtags.end()),
                                  tw.hashtags.end());
                std::string text;
                for (const auto& h : tw.hashtags) {
                    if (!text.empty()) text += ' ';
                    text += '#';
                    text += h;
                }
                tw.text = std::move(text);
                out.tweets.push_back(std::move(tw));
                out.intended.push_back(intended);
            }
        }
    });

    for (auto& u : per_user) {
        result.truth.users[u.author_id] = u.cls;
        for (std::size_t i = 0; i < u.tweets.size(); ++i) {
            result.truth.tweets[u.tweets[i].tweet_id] = u.intended[i];
            result.corpus.tweets.push_back(std::move(u.tweets[i]));
        }
    }

    std::sort(result.corpus.tweets.begin(), result.corpus.tweets.end(),
              [](const TweetRecord& a, const TweetRecord& b) {
                  if (a.created_at != b.created_at) return a.created_at < b.created_at;
                  return a.tweet_id < b.tweet_id;
              });
    result.corpus.stats.n_total = result.corpus.tweets.size();
    result.corpus.stats.n_relevant = result.corpus.tweets.size();
    result.corpus.stats.n_users = config.n_users;
    return result;
}

TruthScore score_against_truth(const PtrState& state, const GroundTruth& truth) {
    TruthScore s;
    std::uint64_t assigned = 0, correct = 0;
    std::uint64_t truth_pos = 0, truth_neg = 0, hit_pos = 0, hit_neg = 0;
    for (const auto& [id, cls] : truth.users) {
        if (cls == Assignment::Pos) ++truth_pos;
        else if (cls == Assignment::Neg) ++truth_neg;
        auto it = state.user_polarity.find(id);
        const Assignment got =
            it == state.user_polarity.end() ? Assignment::None : it->second.assignment;
        if (got == Assignment::None) continue;
        ++assigned;
        if (got == cls) {
            ++correct;
            if (cls == Assignment::Pos) ++hit_pos;
            else ++hit_neg;
        }
    }
    s.user_precision = assigned ? double(correct) / double(assigned) : 1.0;
    const std::uint64_t truth_polarized = truth_pos + truth_neg;
    s.user_recall = truth_polarized ? double(hit_pos + hit_neg) / double(truth_polarized) : 0.0;
    s.recall_pos = truth_pos ? double(hit_pos) / double(truth_pos) : 0.0;
    s.recall_neg = truth_neg ? double(hit_neg) / double(truth_neg) : 0.0;

    std::uint64_t h_assigned = 0, h_correct = 0, h_truth = 0, h_hit = 0;
    for (const auto& [h, cls] : truth.hashtags)
        if (cls != Assignment::None) ++h_truth;
    auto scan = [&](const std::set<std::string>& set, Assignment cls) {
        for (const auto& h : set) {
            ++h_assigned;
            auto it = truth.hashtags.find(h);
            if (it != truth.hashtags.end() && it->second == cls) {
                ++h_correct;
                ++h_hit;
            }
        }
    };
    scan(state.map.pos, Assignment::Pos);
    scan(state.map.neg, Assignment::Neg);
    s.hashtag_precision = h_assigned ? double(h_correct) / double(h_assigned) : 1.0;
    s.hashtag_recall = h_truth ? double(h_hit) / double(h_truth) : 0.0;
    return s;
}

void write_truth_jsonl(std::ostream& out, const GroundTruth& truth) {
    for (const auto& [id, cls] : truth.users) {
        nlohmann::json j;
        j["author_id"] = id;
        j["class"] = cls == Assignment::Pos ? "pos" : cls == Assignment::Neg ? "neg" : "none";
        out << j.dump() << '\n';
    }
    for (const auto& [h, cls] : truth.hashtags) {
        nlohmann::json j;
        j["hashtag"] = h;
        j["class"] = cls == Assignment::Pos ? "pos" : cls == Assignment::Neg ? "neg" : "none";
        out << j.dump() << '\n';
    }
}

}  // namespace polarmine
