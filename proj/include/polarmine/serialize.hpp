#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "polarmine/geo.hpp"
#include "polarmine/ptr.hpp"
#include "polarmine/tweet.hpp"

namespace polarmine {

// Raw tweet JSON-lines (the ingest input format).
void write_tweet_jsonl(std::ostream& out, const TweetRecord& t);
void write_corpus_jsonl(std::ostream& out, const Corpus& corpus);

// Enriched JSON-lines: the input record plus `user_location` and
// `mentioned_locations` objects ({city_id, country_code, source}).
void write_enriched_jsonl(std::ostream& out, const EnrichedCorpus& corpus);
EnrichedCorpus read_enriched_jsonl(std::istream& in);

// Assignment JSON-lines: {"tweet_id": ..., "class": "pos"|"neg"|"none"} and
// {"author_id": ..., "class": ...}.
void write_tweet_assignments(std::ostream& out, const Corpus& corpus,
                             const std::vector<Assignment>& by_tweet);
void write_user_assignments(std::ostream& out, const std::map<std::string, UserPolarity>& users);
std::map<std::string, Assignment> read_user_assignments(std::istream& in);
std::map<std::string, Assignment> read_tweet_assignments(std::istream& in);

// Hashtag-map report TSV: hashtag, class, S_pos, S_neg, iteration_added.
void write_hashtag_map_tsv(std::ostream& out, const PtrState& state);

const char* assignment_name(Assignment a);
const char* source_name(LocationSource s);

// Seed file: lines `<class> <hashtag>`, class in {pos, neg}; '#' comments.
HashtagClassMap load_seed_file(const std::string& path);

}  // namespace polarmine
