#include "polarmine/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "polarmine/errors.hpp"
#include "polarmine/parallel.hpp"

namespace polarmine {

namespace {

using nlohmann::json;

bool is_tag_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

std::string ascii_lower(std::string s) {
    for (char& c : s)
        if (c >= 'A' && c <= 'Z') c = char(c - 'A' + 'a');
    return s;
}

// Valid per the TweetRecord invariants: lowercase, non-empty, no whitespace,
// no leading '#'.
bool valid_hashtag(const std::string& h) {
    if (h.empty() || h[0] == '#') return false;
    for (char c : h) {
        if (c >= 'A' && c <= 'Z') return false;
        if (std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

enum class LineStatus { Ok, Malformed, MissingIds, BadTimestamp, BadCoordinates };

LineStatus parse_line(const std::string& line, TweetRecord& out) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return LineStatus::Malformed;

    auto get_str = [&](const char* key) -> std::optional<std::string> {
        auto it = j.find(key);
        if (it == j.end() || !it->is_string()) return std::nullopt;
        return it->get<std::string>();
    };

    auto tid = get_str("tweet_id");
    auto uid = get_str("author_id");
    if (!tid || tid->empty() || !uid || uid->empty()) return LineStatus::MissingIds;
    out.tweet_id = *tid;
    out.author_id = *uid;

    auto created = get_str("created_at");
    if (!created) return LineStatus::BadTimestamp;
    auto ts = parse_iso8601(*created);
    if (!ts) return LineStatus::BadTimestamp;
    out.created_at = *ts;

    out.text = get_str("text").value_or("");

    out.hashtags.clear();
    if (auto it = j.find("hashtags"); it != j.end() && it->is_array()) {
        for (const auto& e : *it) {
            if (!e.is_string()) continue;
            std::string h = ascii_lower(e.get<std::string>());
            if (!h.empty() && h[0] == '#') h.erase(0, 1);
            if (valid_hashtag(h)) out.hashtags.push_back(std::move(h));
        }
    } else {
        out.hashtags = extract_hashtags(out.text);
    }

    out.gps.reset();
    auto lat_it = j.find("lat");
    auto lon_it = j.find("lon");
    if (lat_it != j.end() && lon_it != j.end()) {
        if (!lat_it->is_number() || !lon_it->is_number()) return LineStatus::BadCoordinates;
        GeoPoint p{lat_it->get<double>(), lon_it->get<double>()};
        if (p.lat < -90.0 || p.lat > 90.0 || p.lon < -180.0 || p.lon > 180.0)
            return LineStatus::BadCoordinates;
        out.gps = p;
    }

    out.place_name = get_str("place");
    out.user_location_text = get_str("user_location");
    return LineStatus::Ok;
}

}  // namespace

std::vector<std::string> extract_hashtags(const std::string& text) {
    std::vector<std::string> tags;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '#') continue;
        std::size_t j = i + 1;
        while (j < text.size() && is_tag_char(text[j])) ++j;
        if (j > i + 1) tags.push_back(ascii_lower(text.substr(i + 1, j - i - 1)));
        i = j - 1;
    }
    return tags;
}

Corpus parse_stream(std::istream& in, SkipReport& skips, unsigned n_threads) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        lines.push_back(std::move(line));
    }

    std::vector<TweetRecord> parsed(lines.size());
    std::vector<LineStatus> status(lines.size(), LineStatus::Malformed);
    parallel_chunks(lines.size(), n_threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) status[i] = parse_line(lines[i], parsed[i]);
    });

    Corpus corpus;
    std::unordered_map<std::string, std::size_t> seen;  // tweet_id -> slot
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        switch (status[i]) {
            case LineStatus::Malformed: ++skips.malformed_json; continue;
            case LineStatus::MissingIds: ++skips.missing_ids; continue;
            case LineStatus::BadTimestamp: ++skips.bad_timestamp; continue;
            case LineStatus::BadCoordinates: ++skips.bad_coordinates; continue;
            case LineStatus::Ok: break;
        }
        auto [it, inserted] = seen.emplace(parsed[i].tweet_id, corpus.tweets.size());
        if (inserted) {
            corpus.tweets.push_back(std::move(parsed[i]));
        } else {
            // Last occurrence wins.
            corpus.tweets[it->second] = std::move(parsed[i]);
            ++skips.duplicate_id;
        }
    }

    std::sort(corpus.tweets.begin(), corpus.tweets.end(),
              [](const TweetRecord& a, const TweetRecord& b) {
                  if (a.created_at != b.created_at) return a.created_at < b.created_at;
                  return a.tweet_id < b.tweet_id;
              });

    corpus.stats.n_total = corpus.tweets.size();
    corpus.stats.n_relevant = corpus.tweets.size();
    std::unordered_set<std::string> users;
    for (const auto& t : corpus.tweets) users.insert(t.author_id);
    corpus.stats.n_users = users.size();
    return corpus;
}

Corpus filter_relevant(const Corpus& corpus, const std::set<std::string>& topic_hashtags) {
    if (topic_hashtags.empty())
        throw ConfigError("topic hashtag set is empty; nothing can be selected");

    Corpus out;
    out.stats = corpus.stats;
    for (const auto& t : corpus.tweets) {
        bool hit = std::any_of(t.hashtags.begin(), t.hashtags.end(), [&](const std::string& h) {
            return topic_hashtags.count(h) > 0;
        });
        if (hit) out.tweets.push_back(t);
    }
    out.stats.n_relevant = out.tweets.size();
    std::unordered_set<std::string> users;
    for (const auto& t : out.tweets) users.insert(t.author_id);
    out.stats.n_users = users.size();
    return out;
}

std::set<std::string> load_topic_hashtags(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open topic hashtag file: " + path);
    std::set<std::string> tags;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        // Trim surrounding whitespace.
        auto b = line.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t");
        line = line.substr(b, e - b + 1);
        if (line[0] == '#') {
            // "# comment" and "## comment" are comments; "#tag" is a tag.
            if (line.size() == 1 || line[1] == '#' || line[1] == ' ' || line[1] == '\t') continue;
            line.erase(0, 1);
        }
        tags.insert(ascii_lower(line));
    }
    return tags;
}

}  // namespace polarmine
