#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tcv/cooccur.hpp"
#include "tcv/corpus.hpp"

namespace tcv {

// Query-derived event terms, query order, duplicates removed. Every
// event is guaranteed present in the corpus vocabulary.
struct EventSet {
    std::vector<std::string> events;

    bool empty() const { return events.empty(); }
};

// Normalizes the query with the corpus tokenizer and keeps the tokens
// that exist in the vocabulary, deduplicated in order of appearance.
EventSet extract_events(std::string_view query, const Corpus& corpus);

struct Ulist {
    std::vector<UncertaintyRecord> records;
};

// For each event e (in event order) and each vocabulary keyword k != e
// (in vocabulary order) that passes the co-occurrence guard, one
// evaluated record. Pairs that never share a document are absent.
Ulist build_ulist(const CooccurrenceIndex& index, const EventSet& events,
                  CountMode mode);

enum class Certainty { certain, uncertain };

struct ContextEntry {
    std::string keyword;
    double entropy = 0.0;
    double info_gain = 0.0;
    double uncertainty = 0.0;
    double ranked_weight = 0.0;
    Certainty label = Certainty::uncertain;  // assigned by partition_certainty
};

// An event's theme: keywords sorted ascending by ranked weight, so the
// most certain associations come first.
struct ContextVector {
    std::string event;
    std::vector<ContextEntry> entries;
};

// Groups records by event (first-appearance order, which for a Ulist
// built here is event order) and sorts each group ascending by ranked
// weight, ties broken lexicographically by keyword.
std::vector<ContextVector> rank(const Ulist& ulist);

// Labels each entry certain when its uncertainty is strictly below the
// threshold. Entry order is unchanged.
ContextVector partition_certainty(ContextVector cv, double threshold);

enum class LabelFilter { certain, uncertain, all };

// First k entries matching the filter, rank order preserved.
ContextVector top_k(const ContextVector& cv, std::size_t k, LabelFilter filter);

const char* to_string(Certainty label);

nlohmann::json to_json(const ContextVector& cv);
nlohmann::json to_json(const std::vector<ContextVector>& cvs);

// CSV mirror of the per-event tables: event,label,keyword,rank_weight.
void write_context_vectors_csv(std::ostream& out,
                               const std::vector<ContextVector>& cvs);

}  // namespace tcv
