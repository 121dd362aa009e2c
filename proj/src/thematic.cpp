#include "tcv/thematic.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <unordered_set>

#include "tcv/common.hpp"

namespace tcv {

EventSet extract_events(std::string_view query, const Corpus& corpus) {
    EventSet events;
    std::unordered_set<std::string> seen;
    for (std::string& token : corpus.tokenizer().tokenize(query)) {
        if (!corpus.contains(token)) continue;
        if (seen.insert(token).second) {
            events.events.push_back(std::move(token));
        }
    }
    return events;
}

Ulist build_ulist(const CooccurrenceIndex& index, const EventSet& events,
                  CountMode mode) {
    Ulist ulist;
    for (const std::string& event : events.events) {
        for (const auto& [keyword, docs] : index.incidence()) {
            if (keyword == event) continue;
            if (!cooccurs(index, keyword, event)) continue;
            ulist.records.push_back(evaluate_pair(index, keyword, event, mode));
        }
    }
    return ulist;
}

std::vector<ContextVector> rank(const Ulist& ulist) {
    std::vector<ContextVector> vectors;
    std::map<std::string, std::size_t> slot;  // event -> position in vectors
    for (const UncertaintyRecord& record : ulist.records) {
        auto [it, inserted] = slot.try_emplace(record.event, vectors.size());
        if (inserted) vectors.push_back(ContextVector{record.event, {}});
        vectors[it->second].entries.push_back(
            ContextEntry{record.keyword, record.entropy, record.info_gain,
                         record.uncertainty, record.ranked_weight,
                         Certainty::uncertain});
    }
    for (ContextVector& cv : vectors) {
        std::stable_sort(cv.entries.begin(), cv.entries.end(),
                         [](const ContextEntry& a, const ContextEntry& b) {
                             if (a.ranked_weight != b.ranked_weight) {
                                 return a.ranked_weight < b.ranked_weight;
                             }
                             return a.keyword < b.keyword;
                         });
    }
    return vectors;
}

ContextVector partition_certainty(ContextVector cv, double threshold) {
    for (ContextEntry& entry : cv.entries) {
        entry.label = entry.uncertainty < threshold ? Certainty::certain
                                                    : Certainty::uncertain;
    }
    return cv;
}

ContextVector top_k(const ContextVector& cv, std::size_t k, LabelFilter filter) {
    ContextVector out;
    out.event = cv.event;
    for (const ContextEntry& entry : cv.entries) {
        if (out.entries.size() >= k) break;
        if (filter == LabelFilter::all ||
            (filter == LabelFilter::certain && entry.label == Certainty::certain) ||
            (filter == LabelFilter::uncertain && entry.label == Certainty::uncertain)) {
            out.entries.push_back(entry);
        }
    }
    return out;
}

const char* to_string(Certainty label) {
    return label == Certainty::certain ? "certain" : "uncertain";
}

nlohmann::json to_json(const ContextVector& cv) {
    nlohmann::json entries = nlohmann::json::array();
    for (const ContextEntry& entry : cv.entries) {
        entries.push_back({{"keyword", entry.keyword},
                           {"entropy", entry.entropy},
                           {"info_gain", entry.info_gain},
                           {"uncertainty", entry.uncertainty},
                           {"ranked_weight", entry.ranked_weight},
                           {"label", to_string(entry.label)}});
    }
    return {{"event", cv.event}, {"entries", std::move(entries)}};
}

nlohmann::json to_json(const std::vector<ContextVector>& cvs) {
    nlohmann::json out = nlohmann::json::array();
    for (const ContextVector& cv : cvs) out.push_back(to_json(cv));
    return out;
}

void write_context_vectors_csv(std::ostream& out,
                               const std::vector<ContextVector>& cvs) {
    out << "event,label,keyword,rank_weight\n";
    for (const ContextVector& cv : cvs) {
        for (const ContextEntry& entry : cv.entries) {
            out << cv.event << ',' << to_string(entry.label) << ',' << entry.keyword
                << ',' << nlohmann::json(entry.ranked_weight).dump() << '\n';
        }
    }
}

}  // namespace tcv
