#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "polarmine/analytics.hpp"
#include "polarmine/errors.hpp"
#include "polarmine/geo.hpp"
#include "polarmine/ingest.hpp"
#include "polarmine/ptr.hpp"
#include "polarmine/serialize.hpp"
#include "polarmine/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace polarmine;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

void require_input(const std::string& path, const char* what) {
    if (!fs::exists(path)) throw ConfigError(std::string(what) + " not found: " + path);
}

fs::path prepare_out_dir(const std::string& out) {
    fs::path dir(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output dir: " + out);
    return dir;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw IoError("cannot open output file: " + p.string());
    return f;
}

EnrichedCorpus load_enriched(const std::string& path) {
    require_input(path, "enriched corpus");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    return read_enriched_jsonl(in);
}

Corpus corpus_of(const EnrichedCorpus& enriched) {
    Corpus c;
    c.stats = enriched.stats;
    for (const auto& e : enriched.tweets) c.tweets.push_back(e.base);
    return c;
}

std::map<std::string, UserPolarity> load_user_polarity(const std::string& path) {
    require_input(path, "user assignments");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    std::map<std::string, UserPolarity> users;
    for (const auto& [id, a] : read_user_assignments(in)) users[id].assignment = a;
    return users;
}

std::string csv_rho_row(const std::string& region, const SentimentIndex& idx) {
    char buf[160];
    if (idx.has_rho())
        std::snprintf(buf, sizeof buf, "%s,%llu,%llu,%.6g\n", region.c_str(),
                      (unsigned long long)idx.n_pos, (unsigned long long)idx.n_neg, idx.rho());
    else
        std::snprintf(buf, sizeof buf, "%s,%llu,%llu,\n", region.c_str(),
                      (unsigned long long)idx.n_pos, (unsigned long long)idx.n_neg);
    return buf;
}

// ---- enrich ----

struct EnrichArgs {
    std::string input, gazetteer, topics, out;
    unsigned threads = 1;
    double gps_radius_km = 50.0;
};

int run_enrich(const EnrichArgs& a) {
    require_input(a.input, "input corpus");
    require_input(a.gazetteer, "gazetteer");
    require_input(a.topics, "topic hashtag file");
    auto topics = load_topic_hashtags(a.topics);
    if (topics.empty()) throw ConfigError("topic hashtag file contains no hashtags");
    std::uint64_t gz_skipped = 0;
    Gazetteer gz = Gazetteer::load(a.gazetteer, &gz_skipped);
    fs::path dir = prepare_out_dir(a.out);

    std::ifstream in(a.input, std::ios::binary);
    if (!in) throw IoError("cannot open: " + a.input);
    SkipReport skips;
    Corpus corpus = parse_stream(in, skips, a.threads);
    Corpus relevant = filter_relevant(corpus, topics);
    EnrichedCorpus enriched = enrich_corpus(relevant, gz, a.threads, a.gps_radius_km);

    {
        auto f = open_out(dir / "enriched.jsonl");
        write_enriched_jsonl(f, enriched);
    }
    {
        json j;
        j["n_total"] = corpus.stats.n_total;
        j["n_relevant"] = enriched.stats.n_relevant;
        j["n_with_user_location"] = enriched.stats.n_with_user_location;
        j["n_with_mentioned_location"] = enriched.stats.n_with_mentioned_location;
        j["n_users"] = enriched.stats.n_users;
        auto f = open_out(dir / "stats.json");
        f << j.dump(2) << '\n';
    }
    if (skips.total() || gz_skipped)
        std::cerr << "skipped: " << skips.malformed_json << " malformed, " << skips.missing_ids
                  << " missing ids, " << skips.bad_timestamp << " bad timestamps, "
                  << skips.bad_coordinates << " bad coordinates, " << skips.duplicate_id
                  << " duplicate ids, " << gz_skipped << " gazetteer rows\n";
    return kExitOk;
}

// ---- polarize ----

struct PolarizeArgs {
    std::string enriched, seeds, gazetteer, out;
    PtrConfig config;
    unsigned threads = 1;
};

int run_polarize(const PolarizeArgs& a) {
    require_input(a.enriched, "enriched corpus");
    require_input(a.seeds, "seed file");
    require_input(a.gazetteer, "gazetteer");
    if (a.config.beta <= 0) throw ConfigError("beta must be positive");
    if (a.config.dominance_factor < 1) throw ConfigError("dominance factor must be >= 1");
    if (a.config.max_iterations < 1) throw ConfigError("max iterations must be >= 1");

    Gazetteer gz = Gazetteer::load(a.gazetteer);
    HashtagClassMap seeds = load_seed_file(a.seeds);
    EnrichedCorpus enriched = load_enriched(a.enriched);
    Corpus corpus = corpus_of(enriched);
    validate_seeds(seeds, corpus, gz);
    fs::path dir = prepare_out_dir(a.out);

    PtrState state = ptr_run(corpus, seeds, a.config, gz, a.threads);
    auto [tweet_frac, user_frac] = coverage_stats(state, corpus);

    {
        auto f = open_out(dir / "tweet_assignments.jsonl");
        write_tweet_assignments(f, corpus, state.tweet_assignment);
    }
    {
        auto f = open_out(dir / "user_assignments.jsonl");
        write_user_assignments(f, state.user_polarity);
    }
    {
        auto f = open_out(dir / "hashtag_map.tsv");
        write_hashtag_map_tsv(f, state);
    }
    {
        json j;
        j["iterations"] = state.iterations;
        j["tweet_coverage"] = tweet_frac;
        j["user_coverage"] = user_frac;
        json hist = json::array();
        for (const auto& st : state.history) {
            hist.push_back({{"iteration", st.iteration},
                            {"map_pos", st.map_pos},
                            {"map_neg", st.map_neg},
                            {"tweets_pos", st.tweets_pos},
                            {"tweets_neg", st.tweets_neg},
                            {"users_pos", st.users_pos},
                            {"users_neg", st.users_neg}});
        }
        j["history"] = std::move(hist);
        auto f = open_out(dir / "ptr_report.json");
        f << j.dump(2) << '\n';
    }
    return kExitOk;
}

// ---- analyze ----

struct AnalyzeArgs {
    std::string enriched, users, tweets, out;
    std::string by = "country";
    std::string timeline_by = "all";
    std::string scope = "internal";
    std::string country;
    std::string pivot;
    std::vector<std::string> countries;
    std::uint64_t min_users = 10;
    std::size_t top_k = 20;
};

int run_analyze_rho(const AnalyzeArgs& a) {
    if (a.by != "country" && a.by != "city") throw ConfigError("--by must be country or city");
    auto enriched = load_enriched(a.enriched);
    auto users = load_user_polarity(a.users);
    fs::path dir = prepare_out_dir(a.out);

    const RegionLevel level = a.by == "city" ? RegionLevel::City : RegionLevel::Country;
    const std::uint64_t min_users = a.min_users;
    auto table = rho_by_region(users, enriched, level, min_users);

    auto f = open_out(dir / "rho.csv");
    f << "region,n_pos,n_neg,rho\n";
    for (const auto& [region, idx] : table) f << csv_rho_row(region, idx);
    return kExitOk;
}

int run_analyze_perception(const AnalyzeArgs& a) {
    if (a.scope != "internal" && a.scope != "external")
        throw ConfigError("--scope must be internal or external");
    auto enriched = load_enriched(a.enriched);
    auto users = load_user_polarity(a.users);
    fs::path dir = prepare_out_dir(a.out);

    const auto scope =
        a.scope == "internal" ? PerceptionScope::Internal : PerceptionScope::External;
    auto table = rho_by_perception(users, enriched, scope);

    auto f = open_out(dir / "perception.csv");
    f << "region,n_pos,n_neg,rho\n";
    for (const auto& [region, idx] : table) f << csv_rho_row(region, idx);
    return kExitOk;
}

int run_analyze_timeline(const AnalyzeArgs& a) {
    if (a.timeline_by != "all" && a.timeline_by != "country")
        throw ConfigError("--by must be all or country");
    auto enriched = load_enriched(a.enriched);
    fs::path dir = prepare_out_dir(a.out);

    std::optional<std::set<std::string>> filter;
    if (!a.countries.empty()) filter.emplace(a.countries.begin(), a.countries.end());
    const auto groupby = a.timeline_by == "all" ? VolumeGroupBy::All : VolumeGroupBy::UserCountry;
    auto series = volume_series(enriched, groupby, filter);

    auto f = open_out(dir / "timeline.csv");
    f << "key,day,count\n";
    for (const auto& [key, count] : series)
        f << key.first << ',' << format_day(key.second) << ',' << count << '\n';
    return kExitOk;
}

int run_analyze_mentions(const AnalyzeArgs& a) {
    auto enriched = load_enriched(a.enriched);
    fs::path dir = prepare_out_dir(a.out);

    std::optional<std::set<std::string>> filter;
    if (!a.countries.empty()) filter.emplace(a.countries.begin(), a.countries.end());
    auto series = volume_series(enriched, VolumeGroupBy::MentionCountry, filter);

    auto f = open_out(dir / "mentions.csv");
    f << "key,day,count\n";
    for (const auto& [key, count] : series)
        f << key.first << ',' << format_day(key.second) << ',' << count << '\n';
    return kExitOk;
}

int run_analyze_sentiment_mentions(const AnalyzeArgs& a) {
    if (a.country.size() != 2) throw ConfigError("--country must be an ISO alpha-2 code");
    auto enriched = load_enriched(a.enriched);
    require_input(a.tweets, "tweet assignments");
    std::ifstream tin(a.tweets, std::ios::binary);
    if (!tin) throw IoError("cannot open: " + a.tweets);
    auto tweet_polarity = read_tweet_assignments(tin);
    fs::path dir = prepare_out_dir(a.out);

    auto series = sentiment_mention_series(enriched, tweet_polarity, a.country);

    auto f = open_out(dir / "sentiment_mentions.csv");
    f << "country,day,n_pos,n_neg\n";
    for (const auto& [day, counts] : series)
        f << a.country << ',' << format_day(day) << ',' << counts.first << ',' << counts.second
          << '\n';
    return kExitOk;
}

int run_analyze_variance(const AnalyzeArgs& a) {
    if (a.top_k < 1) throw ConfigError("--top must be >= 1");
    auto enriched = load_enriched(a.enriched);
    fs::path dir = prepare_out_dir(a.out);

    auto matrix = build_day_frequency_matrix(enriched);
    auto ranked = hashtag_variance_ranking(matrix, a.top_k);

    auto f = open_out(dir / "variance.csv");
    f << "rank,hashtag,variance\n";
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", ranked[i].second);
        f << (i + 1) << ',' << ranked[i].first << ',' << buf << '\n';
    }
    return kExitOk;
}

int run_analyze_split(const AnalyzeArgs& a) {
    auto pivot = parse_date(a.pivot);
    if (!pivot) pivot = parse_iso8601(a.pivot);
    if (!pivot) throw ConfigError("--pivot must be YYYY-MM-DD or an ISO-8601 timestamp");
    auto enriched = load_enriched(a.enriched);
    auto [before, after] = split_window(enriched, *pivot);  // validates the window
    fs::path dir = prepare_out_dir(a.out);

    {
        auto f = open_out(dir / "before.jsonl");
        write_enriched_jsonl(f, before);
    }
    {
        auto f = open_out(dir / "after.jsonl");
        write_enriched_jsonl(f, after);
    }
    return kExitOk;
}

// ---- synth ----

struct SynthArgs {
    SynthConfig config;
    std::string gazetteer, out;
    unsigned threads = 1;
};

int run_synth(const SynthArgs& a) {
    a.config.validate();
    require_input(a.gazetteer, "gazetteer");
    Gazetteer gz = Gazetteer::load(a.gazetteer);
    fs::path dir = prepare_out_dir(a.out);

    SynthResult result = generate(a.config, gz, a.threads);

    {
        auto f = open_out(dir / "corpus.jsonl");
        write_corpus_jsonl(f, result.corpus);
    }
    {
        auto f = open_out(dir / "truth.jsonl");
        write_truth_jsonl(f, result.truth);
    }
    {
        auto f = open_out(dir / "seeds.txt");
        for (const auto& h : result.seeds.pos) f << "pos " << h << '\n';
        for (const auto& h : result.seeds.neg) f << "neg " << h << '\n';
    }
    {
        // Every vocabulary tag, so the corpus round-trips through enrich.
        auto f = open_out(dir / "topics.txt");
        for (const auto& [h, cls] : result.truth.hashtags) f << h << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tweet stream enrichment and polarization analytics"};
    app.require_subcommand(1);
    app.set_config("--config")->configurable(false);

    EnrichArgs enrich_args;
    auto* enrich = app.add_subcommand("enrich", "Parse, filter, and geo-enrich a tweet stream");
    enrich->add_option("--input", enrich_args.input, "Tweet JSON-lines file")->required();
    enrich->add_option("--gazetteer", enrich_args.gazetteer, "Gazetteer TSV")->required();
    enrich->add_option("--topics", enrich_args.topics, "Topic hashtag file")->required();
    enrich->add_option("--out", enrich_args.out, "Output directory")->required();
    enrich->add_option("--threads", enrich_args.threads, "Worker threads");
    enrich->add_option("--gps-radius", enrich_args.gps_radius_km, "GPS snap radius (km)");

    PolarizeArgs polarize_args;
    auto* polarize = app.add_subcommand("polarize", "Run the iterative polarization classifier");
    polarize->add_option("--enriched", polarize_args.enriched, "enriched.jsonl")->required();
    polarize->add_option("--seeds", polarize_args.seeds, "Seed hashtag file")->required();
    polarize->add_option("--gazetteer", polarize_args.gazetteer, "Gazetteer TSV")->required();
    polarize->add_option("--out", polarize_args.out, "Output directory")->required();
    polarize->add_option("--beta", polarize_args.config.beta, "Score ratio threshold");
    polarize->add_option("--dominance", polarize_args.config.dominance_factor,
                         "User dominance factor");
    polarize->add_option("--max-iters", polarize_args.config.max_iterations, "Iteration cap");
    polarize->add_option("--min-class-tweets", polarize_args.config.min_class_tweets,
                         "Minimum polarized tweets per user");
    polarize->add_option("--threads", polarize_args.threads, "Worker threads");

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "Produce plot-ready tables");
    analyze->require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool needs_users) {
        sub->add_option("--enriched", an.enriched, "enriched.jsonl")->required();
        if (needs_users)
            sub->add_option("--users", an.users, "user_assignments.jsonl")->required();
        sub->add_option("--out", an.out, "Output directory")->required();
    };

    auto* rho_cmd = analyze->add_subcommand("rho", "Sentiment index by region");
    add_common(rho_cmd, true);
    rho_cmd->add_option("--by", an.by, "country|city");
    rho_cmd->add_option("--min-users", an.min_users, "Minimum polarized users per region");

    auto* perc_cmd = analyze->add_subcommand("perception", "Internal/external perception index");
    add_common(perc_cmd, true);
    perc_cmd->add_option("--scope", an.scope, "internal|external")->required();

    auto* time_cmd = analyze->add_subcommand("timeline", "Tweet volume per day");
    add_common(time_cmd, false);
    time_cmd->add_option("--by", an.timeline_by, "all|country");
    time_cmd->add_option("--countries", an.countries, "Country filter");

    auto* ment_cmd = analyze->add_subcommand("mentions", "Country mentions per day");
    add_common(ment_cmd, false);
    ment_cmd->add_option("--countries", an.countries, "Country filter");

    auto* sm_cmd = analyze->add_subcommand("sentiment-mentions",
                                           "Polarized tweets mentioning a country per day");
    add_common(sm_cmd, false);
    sm_cmd->add_option("--tweets", an.tweets, "tweet_assignments.jsonl")->required();
    sm_cmd->add_option("--country", an.country, "ISO alpha-2 country")->required();

    auto* var_cmd = analyze->add_subcommand("variance", "Highest-variance hashtags");
    add_common(var_cmd, false);
    var_cmd->add_option("--top", an.top_k, "Number of hashtags to report");

    auto* split_cmd = analyze->add_subcommand("split", "Partition the corpus at a pivot date");
    add_common(split_cmd, false);
    split_cmd->add_option("--pivot", an.pivot, "Pivot date (UTC)")->required();

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Generate a planted-truth synthetic corpus");
    synth->add_option("--gazetteer", synth_args.gazetteer, "Gazetteer TSV")->required();
    synth->add_option("--out", synth_args.out, "Output directory")->required();
    synth->add_option("--users", synth_args.config.n_users, "Number of users");
    synth->add_option("--days", synth_args.config.n_days, "Observation window (days)");
    synth->add_option("--mean-tweets", synth_args.config.tweets_per_user_mean,
                      "Mean tweets per user");
    synth->add_option("--noise", synth_args.config.noise_rate, "Cross-class noise rate");
    synth->add_option("--pad", synth_args.config.shared_pad_rate, "Shared-tag padding rate");
    synth->add_option("--frac-pos", synth_args.config.frac_pos, "Fraction of positive users");
    synth->add_option("--frac-neg", synth_args.config.frac_neg, "Fraction of negative users");
    synth->add_option("--frac-neutral", synth_args.config.frac_neutral,
                      "Fraction of neutral users");
    synth->add_option("--vocab", synth_args.config.vocab_per_class, "Class vocabulary size");
    synth->add_option("--shared-vocab", synth_args.config.shared_vocab,
                      "Shared vocabulary size");
    synth->add_option("--seeds-per-class", synth_args.config.seed_tags_per_class,
                      "Seed tags per class");
    synth->add_option("--rng-seed", synth_args.config.rng_seed, "Generator seed");
    synth->add_option("--threads", synth_args.threads, "Worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*enrich) return run_enrich(enrich_args);
        if (*polarize) return run_polarize(polarize_args);
        if (*synth) return run_synth(synth_args);
        if (*analyze) {
            if (*rho_cmd) return run_analyze_rho(an);
            if (*perc_cmd) return run_analyze_perception(an);
            if (*time_cmd) return run_analyze_timeline(an);
            if (*ment_cmd) return run_analyze_mentions(an);
            if (*sm_cmd) return run_analyze_sentiment_mentions(an);
            if (*var_cmd) return run_analyze_variance(an);
            if (*split_cmd) return run_analyze_split(an);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitConfig;
}
