#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcv/timestamp.hpp"
#include "tcv/tokenizer.hpp"

namespace tcv {

struct Document {
    std::string id;
    Timestamp timestamp;
    std::vector<std::string> tokens;
};

struct TermStats {
    std::size_t term_count = 0;     // token occurrences across all documents
    std::size_t doc_frequency = 0;  // number of documents containing the term

    bool operator==(const TermStats&) const = default;
};

struct SeriesPoint {
    Timestamp timestamp;
    double value = 0.0;
};

// Immutable, timestamp-sorted document collection plus vocabulary
// statistics. Documents left empty by filtering are retained (so the
// time series keep one point per input row) but contribute nothing to
// the vocabulary. The vocabulary map is ordered; its iteration order is
// the canonical "vocabulary order" used by the ranking traversal.
class Corpus {
public:
    Corpus() = default;

    // Sorts by timestamp (stable: input order breaks ties) and builds
    // the vocabulary. The tokenizer is kept for query processing.
    static Corpus from_documents(std::vector<Document> documents,
                                 Tokenizer tokenizer = Tokenizer());

    const std::vector<Document>& documents() const { return documents_; }
    const std::map<std::string, TermStats>& vocabulary() const { return vocabulary_; }
    std::size_t total_token_count() const { return total_token_count_; }
    const Tokenizer& tokenizer() const { return tokenizer_; }

    bool contains(std::string_view term) const;
    std::size_t term_count(std::string_view term) const;
    std::size_t doc_frequency(std::string_view term) const;

private:
    std::vector<Document> documents_;
    std::map<std::string, TermStats> vocabulary_;
    std::size_t total_token_count_ = 0;
    Tokenizer tokenizer_;
};

enum class InputFormat { csv, jsonl };

// Per-ingest diagnostics; the CLI prints these to stderr.
struct IngestReport {
    std::size_t rows_read = 0;
    std::size_t retweets_dropped = 0;
    std::size_t rows_skipped = 0;               // lenient mode only
    std::vector<std::string> warnings;          // one entry per skipped row
};

// Reads a CSV (header id,timestamp,text[,is_retweet], RFC 4180 quoting)
// or JSON-lines file into a Corpus. Retweets are dropped: explicit
// is_retweet when present, otherwise a raw-text "RT @" prefix. Malformed
// rows are fatal unless options.lenient, in which case they are skipped,
// counted, and reported with their line number.
Corpus ingest(const std::filesystem::path& path, InputFormat format,
              const IngestOptions& options, IngestReport* report = nullptr);

// One point per document, value = token count. Corpus order.
std::vector<SeriesPoint> tweet_length_series(const Corpus& corpus);

// One point per document, value = 1 if the document contains the event.
std::vector<SeriesPoint> event_occurrence_series(const Corpus& corpus,
                                                 std::string_view event);

struct StatsReport {
    std::size_t documents = 0;
    std::size_t vocabulary_size = 0;
    std::size_t total_tokens = 0;
    double mean_tokens_per_document = 0.0;  // 0 for an empty corpus
    std::optional<Timestamp> first_timestamp;
    std::optional<Timestamp> last_timestamp;
};

StatsReport corpus_stats(const Corpus& corpus);

}  // namespace tcv
