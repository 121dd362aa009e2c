#pragma once

// Shared test helpers: fixture builders, a random-corpus generator, and
// an independent direct-from-definition oracle for the association
// formulas. The oracle works straight off raw token lists and never
// touches CooccurrenceIndex, so it cross-checks the indexed path.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "tcv/corpus.hpp"

namespace testutil {

// Temp file that cleans up after itself.
struct TempFile {
    std::filesystem::path path;

    explicit TempFile(const std::string& content, const char* suffix = ".csv") {
        static std::atomic<unsigned> counter{0};
        path = std::filesystem::temp_directory_path() /
               ("tcv_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter.fetch_add(1)) + suffix);
        std::ofstream out(path, std::ios::binary);
        out << content;
    }

    TempFile(const TempFile&) = delete;
    TempFile& operator=(const TempFile&) = delete;

    ~TempFile() {
        std::error_code ec;
        std::filesystem::remove(path, ec);
    }
};

using TokenLists = std::vector<std::vector<std::string>>;

inline tcv::Corpus make_corpus(const TokenLists& docs) {
    const tcv::Timestamp base = tcv::parse_timestamp("2020-05-02 00:00");
    std::vector<tcv::Document> documents;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        documents.push_back(tcv::Document{
            "d" + std::to_string(i),
            tcv::Timestamp{base.minutes + static_cast<std::int64_t>(i)}, docs[i]});
    }
    return tcv::Corpus::from_documents(std::move(documents));
}

// The spec's S4 fixture: smallest corpus exercising co-occurrence,
// non-co-occurrence and repeated terms.
inline TokenLists s4_tokens() {
    return {{"medical", "virus", "emergency"},
            {"medical", "virus", "lockdown"},
            {"care", "panic"},
            {"virus", "panic"}};
}

inline tcv::Corpus s4() { return make_corpus(s4_tokens()); }

// Five vocabulary-disjoint topics, 40 documents each. Every document
// carries its topic's event term, a topic anchor word that always
// accompanies the event, and one rotating topic word, so blobs are tight
// but not degenerate and the anchor stays in the thematic projection
// (the event term itself cannot: self-pairs are excluded).
inline tcv::Corpus planted_five_topics() {
    TokenLists docs;
    for (int topic = 0; topic < 5; ++topic) {
        const std::string event = "event" + std::to_string(topic);
        const std::string anchor = "anchor" + std::to_string(topic);
        std::vector<std::string> words;
        for (int w = 0; w < 10; ++w) {
            words.push_back("w" + std::to_string(topic) + "_" + std::to_string(w));
        }
        for (int d = 0; d < 40; ++d) {
            docs.push_back({event, anchor, words[d % 10]});
        }
    }
    return make_corpus(docs);
}

// Random corpus of up to max_docs documents drawn from a pool of up to
// max_terms distinct terms. Documents may repeat tokens and may be empty.
inline TokenLists random_docs(std::mt19937_64& rng, std::size_t max_docs = 8,
                              std::size_t max_terms = 6) {
    static const std::vector<std::string> pool = {"t0", "t1", "t2",
                                                  "t3", "t4", "t5"};
    const std::size_t n_terms = 1 + rng() % max_terms;
    const std::size_t n_docs = 1 + rng() % max_docs;
    TokenLists docs(n_docs);
    for (auto& doc : docs) {
        const std::size_t len = rng() % 6;
        for (std::size_t t = 0; t < len; ++t) {
            doc.push_back(pool[rng() % n_terms]);
        }
    }
    return docs;
}

}  // namespace testutil

namespace oracle {

using testutil::TokenLists;

inline bool contains(const std::vector<std::string>& doc, const std::string& term) {
    for (const std::string& token : doc) {
        if (token == term) return true;
    }
    return false;
}

inline std::size_t df(const TokenLists& docs, const std::string& term) {
    std::size_t count = 0;
    for (const auto& doc : docs) count += contains(doc, term) ? 1 : 0;
    return count;
}

inline std::size_t pair_df(const TokenLists& docs, const std::string& a,
                           const std::string& b) {
    std::size_t count = 0;
    for (const auto& doc : docs) count += (contains(doc, a) && contains(doc, b)) ? 1 : 0;
    return count;
}

inline std::size_t token_count(const TokenLists& docs, const std::string& term) {
    std::size_t count = 0;
    for (const auto& doc : docs) {
        for (const std::string& token : doc) count += token == term ? 1 : 0;
    }
    return count;
}

inline std::size_t total_tokens(const TokenLists& docs) {
    std::size_t count = 0;
    for (const auto& doc : docs) count += doc.size();
    return count;
}

inline double p(const TokenLists& docs, const std::string& term) {
    return static_cast<double>(df(docs, term)) / static_cast<double>(docs.size());
}

inline double p_cond(const TokenLists& docs, const std::string& keyword,
                     const std::string& event) {
    return static_cast<double>(pair_df(docs, keyword, event)) /
           static_cast<double>(df(docs, event));
}

inline double plog_inv(double x) { return x > 0.0 ? x * std::log2(1.0 / x) : 0.0; }
inline double xlogx(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

inline double entropy(const TokenLists& docs, const std::string& keyword,
                      const std::string& event) {
    return -(plog_inv(p(docs, event)) + plog_inv(p(docs, keyword)) +
             xlogx(p_cond(docs, keyword, event)));
}

inline double event_count(const TokenLists& docs, const std::string& event,
                          bool normalized) {
    const double raw = static_cast<double>(df(docs, event));
    return normalized ? raw / static_cast<double>(docs.size()) : raw;
}

inline double info_gain(const TokenLists& docs, const std::string& keyword,
                        const std::string& event, bool normalized) {
    return event_count(docs, event, normalized) * entropy(docs, keyword, event);
}

inline double uncertainty(const TokenLists& docs, const std::string& keyword,
                          const std::string& event, bool normalized) {
    return 1.0 - info_gain(docs, keyword, event, normalized);
}

inline double ranked_weight(const TokenLists& docs, const std::string& keyword,
                            const std::string& event, bool normalized) {
    return uncertainty(docs, keyword, event, normalized) +
           static_cast<double>(token_count(docs, keyword)) /
               static_cast<double>(total_tokens(docs));
}

// cos(k, e) over binary document-incidence vectors.
inline double incidence_cosine(const TokenLists& docs, const std::string& a,
                               const std::string& b) {
    const double na = static_cast<double>(df(docs, a));
    const double nb = static_cast<double>(df(docs, b));
    if (na == 0.0 || nb == 0.0) return 0.0;
    return static_cast<double>(pair_df(docs, a, b)) / std::sqrt(na * nb);
}

}  // namespace oracle
