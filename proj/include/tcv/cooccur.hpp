#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tcv/corpus.hpp"

namespace tcv {

// How the event count C(j) enters the information gain.
enum class CountMode { raw, normalized };

// Term -> document incidence sets over one corpus, plus the corpus-level
// token counts the ranked weight needs. Immutable after build(); every
// query below is pure. Pair counts are computed on demand from the
// sorted incidence lists.
class CooccurrenceIndex {
public:
    CooccurrenceIndex() = default;

    static CooccurrenceIndex build(const Corpus& corpus);

    std::size_t doc_count() const { return doc_count_; }
    std::size_t total_token_count() const { return total_token_count_; }

    // Token occurrences of the term across the corpus; 0 if absent.
    std::size_t term_count(std::string_view term) const;

    // Number of documents containing the term; 0 if absent.
    std::size_t incidence_count(std::string_view term) const;

    // Number of documents containing both terms. Symmetric;
    // pair_count(t, t) == incidence_count(t).
    std::size_t pair_count(std::string_view a, std::string_view b) const;

    // Sorted document indices per term, in vocabulary (lexicographic)
    // order. Also the shape of the --dump-index JSON.
    const std::map<std::string, std::vector<std::size_t>>& incidence() const {
        return incidence_;
    }

private:
    std::map<std::string, std::vector<std::size_t>> incidence_;
    std::map<std::string, std::size_t> term_counts_;
    std::size_t doc_count_ = 0;
    std::size_t total_token_count_ = 0;
};

// Document probability: incidence_count(term) / doc_count. Unknown terms
// have probability 0. Throws ComputeError on an empty corpus.
double term_probability(const CooccurrenceIndex& index, std::string_view term);

// P(keyword | event) = pair_count / incidence_count(event). Throws
// ComputeError when the event is absent (the conditional is undefined).
double conditional_probability(const CooccurrenceIndex& index,
                               std::string_view keyword, std::string_view event);

// C(j): the event's document count, raw or divided by doc_count.
// Absent events count 0.
double event_count(const CooccurrenceIndex& index, std::string_view event,
                   CountMode mode);

// Co-occurrence guard: true iff the two terms share at least one
// document, i.e. the cosine of their binary incidence vectors is nonzero.
bool cooccurs(const CooccurrenceIndex& index, std::string_view keyword,
              std::string_view event);

// Contextual entropy of event j given keyword i, implemented literally
// as printed:
//
//   H_j(i) = -( P(j)*log2(1/P(j)) + P(i)*log2(1/P(i)) + P(i|j)*log2 P(i|j) )
//
// with the convention 0*log2(0) = 0. The sign asymmetry of the third
// summand is the formula's own; it is reproduced, not corrected, so the
// value can land anywhere in [-2*log2(e)/e, log2(e)/e] ~ [-1.0615, 0.5307].
double contextual_entropy(const CooccurrenceIndex& index,
                          std::string_view keyword, std::string_view event);

// IG_j(i) = C(j) * H_j(i).
double information_gain(const CooccurrenceIndex& index, std::string_view keyword,
                        std::string_view event, CountMode mode);

// UN_j(i) = 1 - IG_j(i).
double uncertainty(const CooccurrenceIndex& index, std::string_view keyword,
                   std::string_view event, CountMode mode);

// UN_j(i) + Count(i) / total token count. Throws ComputeError when the
// corpus has no tokens.
double ranked_weight(const CooccurrenceIndex& index, std::string_view keyword,
                     std::string_view event, CountMode mode);

// One evaluated (keyword, event) association.
struct UncertaintyRecord {
    std::string event;
    std::string keyword;
    double entropy = 0.0;
    double info_gain = 0.0;
    double uncertainty = 0.0;
    double ranked_weight = 0.0;
};

// Computes all four quantities in one pass over the shared probabilities.
UncertaintyRecord evaluate_pair(const CooccurrenceIndex& index,
                                std::string_view keyword, std::string_view event,
                                CountMode mode);

namespace detail {

// p * log2(1/p), extended with 0 at p = 0. Peaks at log2(e)/e.
double plog2_inverse(double p);

// p * log2(p), extended with 0 at p = 0.
double xlog2x(double p);

}  // namespace detail

}  // namespace tcv
