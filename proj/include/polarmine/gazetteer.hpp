#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace polarmine {

enum class PlaceKind { City, Country };

struct GazetteerEntry {
    std::string id;
    std::string primary_name;
    std::vector<std::string> alternate_names;
    double latitude = 0.0;
    double longitude = 0.0;
    std::string country_code;  // ISO-3166 alpha-2, uppercase
    std::uint64_t population = 0;
    PlaceKind kind = PlaceKind::City;
};

// Casefold, trim, collapse internal whitespace, strip diacritics.
std::string normalize_name(const std::string& s);

// Immutable after load; lookups go through normalize_name.
class Gazetteer {
public:
    static Gazetteer load(const std::string& path, std::uint64_t* skipped_rows = nullptr);

    // Candidates for a normalized name (cities and countries). Two-letter
    // country codes live in a separate index (lookup_code) so that common
    // short words never match as places.
    const std::vector<const GazetteerEntry*>* lookup(const std::string& normalized) const;

    // Country entry for a normalized ISO alpha-2 code, if any.
    const GazetteerEntry* lookup_code(const std::string& normalized) const;

    // Country code for a country name/alias/code, if any.
    std::optional<std::string> lookup_country(const std::string& normalized) const;

    // True if the normalized name equals any gazetteer name or country code.
    bool is_location_name(const std::string& normalized) const;

    // Nearest city entry within max_km of (lat, lon), by great-circle distance.
    const GazetteerEntry* nearest_city(double lat, double lon, double max_km) const;

    const std::vector<GazetteerEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

private:
    void build_indices();

    std::vector<GazetteerEntry> entries_;
    std::unordered_map<std::string, std::vector<const GazetteerEntry*>> name_index_;
    std::unordered_map<std::string, std::string> country_name_index_;
    std::unordered_map<std::string, const GazetteerEntry*> code_index_;
};

double haversine_km(double lat1, double lon1, double lat2, double lon2);

}  // namespace polarmine
