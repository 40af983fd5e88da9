#include "polarmine/geo.hpp"

#include <algorithm>
#include <unordered_set>

#include "polarmine/parallel.hpp"

namespace polarmine {

namespace {

struct Token {
    std::size_t begin = 0;  // byte offsets
    std::size_t end = 0;
    bool hard_break_after = false;  // comma/period/etc. blocks n-grams
    std::string norm;
};

bool is_separator(unsigned char c) {
    switch (c) {
        case ' ': case '\t': case '\n': case '\r':
        case ',': case '.': case ';': case ':': case '!': case '?':
        case '(': case ')': case '[': case ']': case '{': case '}':
        case '"': case '\'': case '/': case '\\': case '#': case '@':
        case '|': case '<': case '>':
            return true;
        default:
            return false;
    }
}

bool is_hard_break(unsigned char c) {
    switch (c) {
        case ',': case '.': case ';': case ':': case '!': case '?': case '/': case '|':
            return true;
        default:
            return false;
    }
}

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        if (is_separator(static_cast<unsigned char>(text[i]))) {
            if (is_hard_break(static_cast<unsigned char>(text[i])) && !tokens.empty())
                tokens.back().hard_break_after = true;
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && !is_separator(static_cast<unsigned char>(text[j]))) ++j;
        Token t;
        t.begin = i;
        t.end = j;
        t.norm = normalize_name(text.substr(i, j - i));
        tokens.push_back(std::move(t));
        i = j;
    }
    return tokens;
}

struct RawMatch {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::vector<const GazetteerEntry*> candidates;
};

// Bare ISO codes only count when written in uppercase ("Paris, FR"); a
// lowercase "no" or "it" is an English word, not a country.
bool looks_like_code(const std::string& text, const Token& t) {
    if (t.end - t.begin != 2) return false;
    return text[t.begin] >= 'A' && text[t.begin] <= 'Z' && text[t.begin + 1] >= 'A' &&
           text[t.begin + 1] <= 'Z';
}

// Picks the winning candidate for a match given the set of countries named
// elsewhere in the same text. Country entries win over city homonyms only
// when no city candidate exists under the constraint.
const GazetteerEntry* disambiguate(const RawMatch& m,
                                   const std::unordered_set<std::string>& countries_in_text) {
    std::vector<const GazetteerEntry*> pool = m.candidates;

    // A name that is itself a country resolves to the country entry.
    for (const auto* e : pool)
        if (e->kind == PlaceKind::Country) return e;

    if (!countries_in_text.empty()) {
        std::vector<const GazetteerEntry*> constrained;
        for (const auto* e : pool)
            if (countries_in_text.count(e->country_code)) constrained.push_back(e);
        if (!constrained.empty()) pool = std::move(constrained);
    }

    const GazetteerEntry* best = nullptr;
    for (const auto* e : pool) {
        if (!best || e->population > best->population ||
            (e->population == best->population && e->id < best->id))
            best = e;
    }
    return best;
}

ResolvedLocation to_location(const GazetteerEntry* e, LocationSource src, std::size_t begin,
                             std::size_t end) {
    ResolvedLocation loc;
    loc.source = src;
    loc.matched_span = {begin, end};
    if (e->kind == PlaceKind::City) {
        loc.city_id = e->id;
        loc.country_code = e->country_code;  // city -> country inference
    } else {
        loc.country_code = e->country_code;
    }
    return loc;
}

}  // namespace

std::vector<ResolvedLocation> match_location_text(const std::string& text, const Gazetteer& gz) {
    const auto tokens = tokenize(text);

    // Longest-match-first scan; each token consumed by at most one match.
    std::vector<RawMatch> matches;
    std::size_t i = 0;
    while (i < tokens.size()) {
        bool consumed = false;
        for (std::size_t n = 3; n >= 1; --n) {
            if (i + n > tokens.size()) continue;
            bool crosses_break = false;
            std::string key;
            for (std::size_t k = 0; k < n; ++k) {
                if (k > 0 && tokens[i + k - 1].hard_break_after) crosses_break = true;
                if (k > 0) key += ' ';
                key += tokens[i + k].norm;
            }
            if (crosses_break && n > 1) continue;
            const auto* cands = gz.lookup(key);
            if (cands) {
                matches.push_back({tokens[i].begin, tokens[i + n - 1].end, *cands});
                i += n;
                consumed = true;
                break;
            }
            if (n == 1) {
                if (looks_like_code(text, tokens[i])) {
                    if (const auto* e = gz.lookup_code(key)) {
                        matches.push_back({tokens[i].begin, tokens[i].end, {e}});
                        i += 1;
                        consumed = true;
                    }
                }
                break;
            }
        }
        if (!consumed) ++i;
    }

    // First pass: country mentions constrain city homonyms anywhere in the text.
    std::unordered_set<std::string> countries_in_text;
    for (const auto& m : matches)
        for (const auto* e : m.candidates)
            if (e->kind == PlaceKind::Country) countries_in_text.insert(e->country_code);

    std::vector<ResolvedLocation> out;
    out.reserve(matches.size());
    for (const auto& m : matches) {
        const GazetteerEntry* e = disambiguate(m, countries_in_text);
        if (e) out.push_back(to_location(e, LocationSource::TextMention, m.begin, m.end));
    }
    return out;
}

std::optional<ResolvedLocation> resolve_user_location(const TweetRecord& tweet, const Gazetteer& gz,
                                                      double gps_snap_km) {
    if (tweet.gps) {
        const auto* e = gz.nearest_city(tweet.gps->lat, tweet.gps->lon, gps_snap_km);
        if (e) {
            ResolvedLocation loc;
            loc.city_id = e->id;
            loc.country_code = e->country_code;
            loc.source = LocationSource::Gps;
            return loc;
        }
    }
    auto from_text = [&](const std::string& text,
                         LocationSource src) -> std::optional<ResolvedLocation> {
        auto found = match_location_text(text, gz);
        if (found.empty()) return std::nullopt;
        // Prefer a city-level match; fall back to the first country mention.
        for (auto& loc : found) {
            if (loc.city_id) {
                loc.source = src;
                return loc;
            }
        }
        found.front().source = src;
        return found.front();
    };
    if (tweet.place_name) {
        if (auto loc = from_text(*tweet.place_name, LocationSource::Place)) return loc;
    }
    if (tweet.user_location_text) {
        if (auto loc = from_text(*tweet.user_location_text, LocationSource::FreeText)) return loc;
    }
    return std::nullopt;
}

std::vector<ResolvedLocation> extract_mentioned_locations(const TweetRecord& tweet,
                                                          const Gazetteer& gz) {
    return match_location_text(tweet.text, gz);
}

EnrichedCorpus enrich_corpus(const Corpus& corpus, const Gazetteer& gz, unsigned n_threads,
                             double gps_snap_km) {
    EnrichedCorpus out;
    out.stats = corpus.stats;
    out.tweets.resize(corpus.tweets.size());
    parallel_chunks(corpus.tweets.size(), n_threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto& t = corpus.tweets[i];
            auto& e = out.tweets[i];
            e.base = t;
            e.user_location = resolve_user_location(t, gz, gps_snap_km);
            e.mentioned_locations = extract_mentioned_locations(t, gz);
        }
    });
    out.stats.n_with_user_location = 0;
    out.stats.n_with_mentioned_location = 0;
    for (const auto& e : out.tweets) {
        if (e.user_location) ++out.stats.n_with_user_location;
        if (!e.mentioned_locations.empty()) ++out.stats.n_with_mentioned_location;
    }
    return out;
}

}  // namespace polarmine
