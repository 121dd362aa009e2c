#include "tcv/cooccur.hpp"

#include <algorithm>
#include <cmath>

#include "tcv/common.hpp"

namespace tcv {

namespace detail {

double plog2_inverse(double p) {
    return p > 0.0 ? p * std::log2(1.0 / p) : 0.0;
}

double xlog2x(double p) {
    return p > 0.0 ? p * std::log2(p) : 0.0;
}

}  // namespace detail

CooccurrenceIndex CooccurrenceIndex::build(const Corpus& corpus) {
    CooccurrenceIndex index;
    index.doc_count_ = corpus.documents().size();
    index.total_token_count_ = corpus.total_token_count();
    for (std::size_t d = 0; d < corpus.documents().size(); ++d) {
        const Document& doc = corpus.documents()[d];
        for (const std::string& token : doc.tokens) {
            std::vector<std::size_t>& docs = index.incidence_[token];
            if (docs.empty() || docs.back() != d) docs.push_back(d);
        }
    }
    for (const auto& [term, stats] : corpus.vocabulary()) {
        index.term_counts_[term] = stats.term_count;
    }
    return index;
}

std::size_t CooccurrenceIndex::term_count(std::string_view term) const {
    auto it = term_counts_.find(std::string(term));
    return it == term_counts_.end() ? 0 : it->second;
}

std::size_t CooccurrenceIndex::incidence_count(std::string_view term) const {
    auto it = incidence_.find(std::string(term));
    return it == incidence_.end() ? 0 : it->second.size();
}

std::size_t CooccurrenceIndex::pair_count(std::string_view a, std::string_view b) const {
    auto ia = incidence_.find(std::string(a));
    auto ib = incidence_.find(std::string(b));
    if (ia == incidence_.end() || ib == incidence_.end()) return 0;
    const std::vector<std::size_t>& da = ia->second;
    const std::vector<std::size_t>& db = ib->second;
    std::size_t count = 0;
    auto pa = da.begin();
    auto pb = db.begin();
    while (pa != da.end() && pb != db.end()) {
        if (*pa < *pb) ++pa;
        else if (*pb < *pa) ++pb;
        else { ++count; ++pa; ++pb; }
    }
    return count;
}

double term_probability(const CooccurrenceIndex& index, std::string_view term) {
    if (index.doc_count() == 0) {
        throw ComputeError("term_probability: empty corpus");
    }
    return static_cast<double>(index.incidence_count(term)) /
           static_cast<double>(index.doc_count());
}

double conditional_probability(const CooccurrenceIndex& index,
                               std::string_view keyword, std::string_view event) {
    const std::size_t event_docs = index.incidence_count(event);
    if (event_docs == 0) {
        throw ComputeError("conditional probability undefined: event \"" +
                           std::string(event) + "\" does not occur in the corpus");
    }
    return static_cast<double>(index.pair_count(keyword, event)) /
           static_cast<double>(event_docs);
}

double event_count(const CooccurrenceIndex& index, std::string_view event,
                   CountMode mode) {
    const auto docs = static_cast<double>(index.incidence_count(event));
    if (mode == CountMode::raw) return docs;
    return index.doc_count() == 0 ? 0.0
                                  : docs / static_cast<double>(index.doc_count());
}

bool cooccurs(const CooccurrenceIndex& index, std::string_view keyword,
              std::string_view event) {
    return index.pair_count(keyword, event) > 0;
}

double contextual_entropy(const CooccurrenceIndex& index,
                          std::string_view keyword, std::string_view event) {
    const double p_event = term_probability(index, event);
    const double p_keyword = term_probability(index, keyword);
    const double p_cond = conditional_probability(index, keyword, event);
    return -(detail::plog2_inverse(p_event) + detail::plog2_inverse(p_keyword) +
             detail::xlog2x(p_cond));
}

double information_gain(const CooccurrenceIndex& index, std::string_view keyword,
                        std::string_view event, CountMode mode) {
    return event_count(index, event, mode) * contextual_entropy(index, keyword, event);
}

double uncertainty(const CooccurrenceIndex& index, std::string_view keyword,
                   std::string_view event, CountMode mode) {
    return 1.0 - information_gain(index, keyword, event, mode);
}

double ranked_weight(const CooccurrenceIndex& index, std::string_view keyword,
                     std::string_view event, CountMode mode) {
    if (index.total_token_count() == 0) {
        throw ComputeError("ranked_weight: corpus has no tokens");
    }
    return uncertainty(index, keyword, event, mode) +
           static_cast<double>(index.term_count(keyword)) /
               static_cast<double>(index.total_token_count());
}

UncertaintyRecord evaluate_pair(const CooccurrenceIndex& index,
                                std::string_view keyword, std::string_view event,
                                CountMode mode) {
    UncertaintyRecord record;
    record.event = std::string(event);
    record.keyword = std::string(keyword);
    record.entropy = contextual_entropy(index, keyword, event);
    record.info_gain = event_count(index, event, mode) * record.entropy;
    record.uncertainty = 1.0 - record.info_gain;
    if (index.total_token_count() == 0) {
        throw ComputeError("ranked_weight: corpus has no tokens");
    }
    record.ranked_weight = record.uncertainty +
                           static_cast<double>(index.term_count(keyword)) /
                               static_cast<double>(index.total_token_count());
    return record;
}

}  // namespace tcv
