#include "polarmine/gazetteer.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>

#include "polarmine/errors.hpp"

namespace polarmine {

namespace {

// Maps a Latin-1 / Latin-Extended-A codepoint to its unaccented ASCII form,
// or empty when there is no sensible mapping.
const char* strip_diacritic(char32_t cp) {
    switch (cp) {
        case U'ß': return "ss";
        case U'æ': case U'Æ': return "ae";
        case U'ø': case U'Ø': return "o";
        case U'đ': case U'Đ': case U'ð': case U'Ð': return "d";
        case U'þ': case U'Þ': return "th";
        case U'ı': return "i";
        case U'œ': case U'Œ': return "oe";
        case U'ł': case U'Ł': return "l";
        case U'ș': case U'Ș': return "s";  // comma-below forms (Romanian)
        case U'ț': case U'Ț': return "t";
        default: break;
    }
    if (cp >= 0x00C0 && cp <= 0x017F) {
        struct Range { char32_t lo, hi; char ch; };
        static const Range ranges[] = {
            {0x00C0, 0x00C5, 'a'}, {0x00C7, 0x00C7, 'c'}, {0x00C8, 0x00CB, 'e'},
            {0x00CC, 0x00CF, 'i'}, {0x00D1, 0x00D1, 'n'}, {0x00D2, 0x00D6, 'o'},
            {0x00D9, 0x00DC, 'u'}, {0x00DD, 0x00DD, 'y'},
            {0x00E0, 0x00E5, 'a'}, {0x00E7, 0x00E7, 'c'}, {0x00E8, 0x00EB, 'e'},
            {0x00EC, 0x00EF, 'i'}, {0x00F1, 0x00F1, 'n'}, {0x00F2, 0x00F6, 'o'},
            {0x00F9, 0x00FC, 'u'}, {0x00FD, 0x00FF, 'y'},
            {0x0100, 0x0105, 'a'}, {0x0106, 0x010D, 'c'}, {0x010E, 0x0111, 'd'},
            {0x0112, 0x011B, 'e'}, {0x011C, 0x0123, 'g'}, {0x0124, 0x0127, 'h'},
            {0x0128, 0x0131, 'i'}, {0x0134, 0x0135, 'j'}, {0x0136, 0x0137, 'k'},
            {0x0139, 0x0142, 'l'}, {0x0143, 0x0148, 'n'}, {0x014C, 0x0151, 'o'},
            {0x0154, 0x0159, 'r'}, {0x015A, 0x0161, 's'}, {0x0162, 0x0167, 't'},
            {0x0168, 0x0173, 'u'}, {0x0174, 0x0175, 'w'}, {0x0176, 0x0178, 'y'},
            {0x0179, 0x017E, 'z'},
        };
        for (const auto& r : ranges) {
            if (cp >= r.lo && cp <= r.hi) {
                static thread_local char buf[2];
                buf[0] = r.ch;
                buf[1] = '\0';
                return buf;
            }
        }
    }
    return nullptr;
}

// Decodes one UTF-8 codepoint at s[i]; advances i. Invalid bytes pass through.
char32_t decode_utf8(const std::string& s, std::size_t& i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) { ++i; return c; }
    int extra = 0;
    char32_t cp = 0;
    if ((c & 0xE0) == 0xC0) { extra = 1; cp = c & 0x1F; }
    else if ((c & 0xF0) == 0xE0) { extra = 2; cp = c & 0x0F; }
    else if ((c & 0xF8) == 0xF0) { extra = 3; cp = c & 0x07; }
    else { ++i; return c; }
    if (i + extra >= s.size()) { ++i; return c; }
    for (int k = 1; k <= extra; ++k) {
        unsigned char cc = static_cast<unsigned char>(s[i + k]);
        if ((cc & 0xC0) != 0x80) { ++i; return c; }
        cp = (cp << 6) | (cc & 0x3F);
    }
    i += extra + 1;
    return cp;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) out.push_back(part);
    return out;
}

}  // namespace

std::string normalize_name(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    bool pending_space = false;
    while (i < s.size()) {
        char32_t cp = decode_utf8(s, i);
        std::string piece;
        if (cp < 0x80) {
            char c = static_cast<char>(cp);
            if (c >= 'A' && c <= 'Z') c = char(c - 'A' + 'a');
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                pending_space = true;
                continue;
            }
            piece = c;
        } else if (const char* mapped = strip_diacritic(cp)) {
            piece = mapped;
        } else {
            // No ASCII mapping; keep the codepoint as-is.
            if (cp < 0x800) {
                piece += char(0xC0 | (cp >> 6));
                piece += char(0x80 | (cp & 0x3F));
            } else if (cp < 0x10000) {
                piece += char(0xE0 | (cp >> 12));
                piece += char(0x80 | ((cp >> 6) & 0x3F));
                piece += char(0x80 | (cp & 0x3F));
            } else {
                piece += char(0xF0 | (cp >> 18));
                piece += char(0x80 | ((cp >> 12) & 0x3F));
                piece += char(0x80 | ((cp >> 6) & 0x3F));
                piece += char(0x80 | (cp & 0x3F));
            }
        }
        if (pending_space) {
            if (!out.empty()) out += ' ';
            pending_space = false;
        }
        out += piece;
    }
    return out;
}

Gazetteer Gazetteer::load(const std::string& path, std::uint64_t* skipped_rows) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open gazetteer file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw ConfigError("gazetteer file is empty: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split(line, '\t');
    const std::vector<std::string> expected = {"id",       "primary_name", "alternate_names",
                                               "latitude", "longitude",    "country_code",
                                               "population", "kind"};
    if (header != expected) throw ConfigError("gazetteer header mismatch in " + path);

    Gazetteer gz;
    std::uint64_t skipped = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cols = split(line, '\t');
        if (cols.size() != 8) { ++skipped; continue; }
        GazetteerEntry e;
        e.id = cols[0];
        e.primary_name = cols[1];
        for (auto& a : split(cols[2], ','))
            if (!a.empty()) e.alternate_names.push_back(a);
        try {
            e.latitude = std::stod(cols[3]);
            e.longitude = std::stod(cols[4]);
            e.population = std::stoull(cols[6]);
        } catch (const std::exception&) {
            ++skipped;
            continue;
        }
        e.country_code = cols[5];
        if (e.country_code.size() != 2 || e.primary_name.empty()) { ++skipped; continue; }
        if (cols[7] == "city") e.kind = PlaceKind::City;
        else if (cols[7] == "country") e.kind = PlaceKind::Country;
        else { ++skipped; continue; }
        gz.entries_.push_back(std::move(e));
    }
    if (skipped_rows) *skipped_rows = skipped;
    gz.build_indices();
    return gz;
}

void Gazetteer::build_indices() {
    for (const auto& e : entries_) {
        auto add = [&](const std::string& name) {
            std::string key = normalize_name(name);
            if (key.empty()) return;
            auto& v = name_index_[key];
            for (const auto* p : v)
                if (p == &e) return;
            v.push_back(&e);
            if (e.kind == PlaceKind::Country) country_name_index_.emplace(key, e.country_code);
        };
        add(e.primary_name);
        for (const auto& a : e.alternate_names) add(a);
        if (e.kind == PlaceKind::Country) code_index_.emplace(normalize_name(e.country_code), &e);
    }
}

const std::vector<const GazetteerEntry*>* Gazetteer::lookup(const std::string& normalized) const {
    auto it = name_index_.find(normalized);
    return it == name_index_.end() ? nullptr : &it->second;
}

const GazetteerEntry* Gazetteer::lookup_code(const std::string& normalized) const {
    auto it = code_index_.find(normalized);
    return it == code_index_.end() ? nullptr : it->second;
}

std::optional<std::string> Gazetteer::lookup_country(const std::string& normalized) const {
    auto it = country_name_index_.find(normalized);
    if (it != country_name_index_.end()) return it->second;
    if (const auto* e = lookup_code(normalized)) return e->country_code;
    return std::nullopt;
}

bool Gazetteer::is_location_name(const std::string& normalized) const {
    return name_index_.count(normalized) > 0 || code_index_.count(normalized) > 0;
}

const GazetteerEntry* Gazetteer::nearest_city(double lat, double lon, double max_km) const {
    const GazetteerEntry* best = nullptr;
    double best_km = max_km;
    for (const auto& e : entries_) {
        if (e.kind != PlaceKind::City) continue;
        double d = haversine_km(lat, lon, e.latitude, e.longitude);
        if (d < best_km || (best && d == best_km && e.id < best->id)) {
            best = &e;
            best_km = d;
        }
    }
    return best;
}

double haversine_km(double lat1, double lon1, double lat2, double lon2) {
    constexpr double kEarthRadiusKm = 6371.0;
    constexpr double kDeg = 3.14159265358979323846 / 180.0;
    double dlat = (lat2 - lat1) * kDeg;
    double dlon = (lon2 - lon1) * kDeg;
    double a = std::sin(dlat / 2) * std::sin(dlat / 2) +
               std::cos(lat1 * kDeg) * std::cos(lat2 * kDeg) * std::sin(dlon / 2) *
                   std::sin(dlon / 2);
    return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

}  // namespace polarmine
