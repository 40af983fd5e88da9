#include "polarmine/serialize.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "polarmine/errors.hpp"

namespace polarmine {

namespace {

using nlohmann::json;

json tweet_to_json(const TweetRecord& t) {
    json j;
    j["tweet_id"] = t.tweet_id;
    j["author_id"] = t.author_id;
    j["created_at"] = format_iso8601(t.created_at);
    j["text"] = t.text;
    j["hashtags"] = t.hashtags;
    if (t.gps) {
        j["lat"] = t.gps->lat;
        j["lon"] = t.gps->lon;
    }
    if (t.place_name) j["place"] = *t.place_name;
    if (t.user_location_text) j["user_location"] = *t.user_location_text;
    return j;
}

json location_to_json(const ResolvedLocation& loc) {
    json j;
    if (loc.city_id) j["city_id"] = *loc.city_id;
    if (loc.country_code) j["country_code"] = *loc.country_code;
    j["source"] = source_name(loc.source);
    if (loc.matched_span) j["span"] = {loc.matched_span->first, loc.matched_span->second};
    return j;
}

std::optional<ResolvedLocation> location_from_json(const json& j) {
    if (!j.is_object()) return std::nullopt;
    ResolvedLocation loc;
    if (auto it = j.find("city_id"); it != j.end() && it->is_string())
        loc.city_id = it->get<std::string>();
    if (auto it = j.find("country_code"); it != j.end() && it->is_string())
        loc.country_code = it->get<std::string>();
    if (!loc.city_id && !loc.country_code) return std::nullopt;
    if (auto it = j.find("source"); it != j.end() && it->is_string()) {
        const std::string s = it->get<std::string>();
        if (s == "gps") loc.source = LocationSource::Gps;
        else if (s == "place") loc.source = LocationSource::Place;
        else if (s == "free_text") loc.source = LocationSource::FreeText;
        else loc.source = LocationSource::TextMention;
    }
    if (auto it = j.find("span"); it != j.end() && it->is_array() && it->size() == 2)
        loc.matched_span = {(*it)[0].get<std::size_t>(), (*it)[1].get<std::size_t>()};
    return loc;
}

Assignment assignment_from_name(const std::string& s) {
    if (s == "pos") return Assignment::Pos;
    if (s == "neg") return Assignment::Neg;
    return Assignment::None;
}

}  // namespace

const char* assignment_name(Assignment a) {
    switch (a) {
        case Assignment::Pos: return "pos";
        case Assignment::Neg: return "neg";
        default: return "none";
    }
}

const char* source_name(LocationSource s) {
    switch (s) {
        case LocationSource::Gps: return "gps";
        case LocationSource::Place: return "place";
        case LocationSource::FreeText: return "free_text";
        default: return "text_mention";
    }
}

void write_tweet_jsonl(std::ostream& out, const TweetRecord& t) {
    out << tweet_to_json(t).dump() << '\n';
}

void write_corpus_jsonl(std::ostream& out, const Corpus& corpus) {
    for (const auto& t : corpus.tweets) write_tweet_jsonl(out, t);
}

void write_enriched_jsonl(std::ostream& out, const EnrichedCorpus& corpus) {
    for (const auto& e : corpus.tweets) {
        json j = tweet_to_json(e.base);
        if (e.user_location) j["user_location"] = location_to_json(*e.user_location);
        json mentions = json::array();
        for (const auto& m : e.mentioned_locations) mentions.push_back(location_to_json(m));
        j["mentioned_locations"] = std::move(mentions);
        out << j.dump() << '\n';
    }
}

EnrichedCorpus read_enriched_jsonl(std::istream& in) {
    EnrichedCorpus corpus;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw IoError("malformed enriched record");
        EnrichedTweet e;
        e.base.tweet_id = j.value("tweet_id", "");
        e.base.author_id = j.value("author_id", "");
        auto ts = parse_iso8601(j.value("created_at", ""));
        if (e.base.tweet_id.empty() || e.base.author_id.empty() || !ts)
            throw IoError("malformed enriched record: missing ids or timestamp");
        e.base.created_at = *ts;
        e.base.text = j.value("text", "");
        if (auto it = j.find("hashtags"); it != j.end() && it->is_array())
            for (const auto& h : *it)
                if (h.is_string()) e.base.hashtags.push_back(h.get<std::string>());
        if (auto lat = j.find("lat"), lon = j.find("lon");
            lat != j.end() && lon != j.end() && lat->is_number() && lon->is_number())
            e.base.gps = GeoPoint{lat->get<double>(), lon->get<double>()};
        if (auto it = j.find("user_location"); it != j.end())
            e.user_location = location_from_json(*it);
        if (auto it = j.find("mentioned_locations"); it != j.end() && it->is_array())
            for (const auto& m : *it)
                if (auto loc = location_from_json(m)) e.mentioned_locations.push_back(*loc);
        corpus.tweets.push_back(std::move(e));
    }
    corpus.stats.n_total = corpus.tweets.size();
    corpus.stats.n_relevant = corpus.tweets.size();
    std::set<std::string> users;
    for (const auto& e : corpus.tweets) {
        users.insert(e.base.author_id);
        if (e.user_location) ++corpus.stats.n_with_user_location;
        if (!e.mentioned_locations.empty()) ++corpus.stats.n_with_mentioned_location;
    }
    corpus.stats.n_users = users.size();
    return corpus;
}

void write_tweet_assignments(std::ostream& out, const Corpus& corpus,
                             const std::vector<Assignment>& by_tweet) {
    for (std::size_t i = 0; i < corpus.tweets.size(); ++i) {
        json j;
        j["tweet_id"] = corpus.tweets[i].tweet_id;
        j["class"] = assignment_name(by_tweet[i]);
        out << j.dump() << '\n';
    }
}

void write_user_assignments(std::ostream& out, const std::map<std::string, UserPolarity>& users) {
    for (const auto& [id, u] : users) {
        json j;
        j["author_id"] = id;
        j["class"] = assignment_name(u.assignment);
        out << j.dump() << '\n';
    }
}

std::map<std::string, Assignment> read_user_assignments(std::istream& in) {
    std::map<std::string, Assignment> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw IoError("malformed assignment record");
        out[j.value("author_id", "")] = assignment_from_name(j.value("class", "none"));
    }
    out.erase("");
    return out;
}

std::map<std::string, Assignment> read_tweet_assignments(std::istream& in) {
    std::map<std::string, Assignment> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw IoError("malformed assignment record");
        out[j.value("tweet_id", "")] = assignment_from_name(j.value("class", "none"));
    }
    out.erase("");
    return out;
}

void write_hashtag_map_tsv(std::ostream& out, const PtrState& state) {
    out << "hashtag\tclass\tS_pos\tS_neg\titeration_added\n";
    for (const auto& [h, row] : state.hashtag_report) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6g\t%.6g", row.s_pos, row.s_neg);
        out << h << '\t' << assignment_name(row.cls) << '\t' << buf << '\t'
            << row.iteration_added << '\n';
    }
}

HashtagClassMap load_seed_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open seed file: " + path);
    HashtagClassMap seeds;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto b = line.find_first_not_of(" \t");
        if (b == std::string::npos || line[b] == '#') continue;
        auto sp = line.find_first_of(" \t", b);
        if (sp == std::string::npos)
            throw ConfigError("seed file line " + std::to_string(lineno) +
                              ": expected '<class> <hashtag>'");
        std::string cls = line.substr(b, sp - b);
        auto hb = line.find_first_not_of(" \t", sp);
        if (hb == std::string::npos)
            throw ConfigError("seed file line " + std::to_string(lineno) + ": missing hashtag");
        auto he = line.find_last_not_of(" \t");
        std::string tag = line.substr(hb, he - hb + 1);
        if (!tag.empty() && tag[0] == '#') tag.erase(0, 1);
        for (char& c : tag)
            if (c >= 'A' && c <= 'Z') c = char(c - 'A' + 'a');
        if (tag.empty())
            throw ConfigError("seed file line " + std::to_string(lineno) + ": empty hashtag");
        if (cls == "pos") seeds.pos.insert(tag);
        else if (cls == "neg") seeds.neg.insert(tag);
        else
            throw ConfigError("seed file line " + std::to_string(lineno) +
                              ": class must be 'pos' or 'neg'");
    }
    return seeds;
}

}  // namespace polarmine
