#include "tcv/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <istream>

#include <json.hpp>

#include "tcv/common.hpp"

namespace tcv {

namespace {

// One RFC 4180 record; quoted fields may span lines. Returns false at
// end of input. line_no advances past every physical line consumed.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields,
                     std::size_t& line_no) {
    fields.clear();
    int c = in.get();
    if (c == EOF) return false;
    ++line_no;
    std::string field;
    bool quoted = false;
    while (true) {
        if (c == EOF) {
            if (quoted) {
                throw InputError("line " + std::to_string(line_no) +
                                 ": unterminated quoted field");
            }
            fields.push_back(std::move(field));
            return true;
        }
        const char ch = static_cast<char>(c);
        if (quoted) {
            if (ch == '"') {
                if (in.peek() == '"') {
                    in.get();
                    field.push_back('"');
                } else {
                    quoted = false;
                }
            } else {
                if (ch == '\n') ++line_no;
                field.push_back(ch);
            }
        } else if (ch == '"' && field.empty()) {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            fields.push_back(std::move(field));
            return true;
        } else {
            field.push_back(ch);
        }
        c = in.get();
    }
}

bool parse_bool_flag(const std::string& value) {
    std::string v;
    for (char c : value) v.push_back(static_cast<char>(std::tolower(
                             static_cast<unsigned char>(c))));
    return v == "1" || v == "true" || v == "t" || v == "yes";
}

bool text_is_retweet(std::string_view text) {
    return text.substr(0, 4) == "RT @";
}

struct RawRow {
    std::string id;
    std::string timestamp;
    std::string text;
    bool is_retweet = false;
};

using RowSink = std::function<void(const RawRow&, std::size_t line_no)>;

}  // namespace

Corpus Corpus::from_documents(std::vector<Document> documents, Tokenizer tokenizer) {
    Corpus corpus;
    corpus.tokenizer_ = std::move(tokenizer);
    std::stable_sort(documents.begin(), documents.end(),
                     [](const Document& a, const Document& b) {
                         return a.timestamp < b.timestamp;
                     });
    for (const Document& doc : documents) {
        std::map<std::string, std::size_t> in_doc;
        for (const std::string& token : doc.tokens) {
            if (token.empty()) {
                throw ComputeError("document " + doc.id + " carries an empty token");
            }
            ++in_doc[token];
        }
        for (const auto& [term, count] : in_doc) {
            TermStats& stats = corpus.vocabulary_[term];
            stats.term_count += count;
            stats.doc_frequency += 1;
            corpus.total_token_count_ += count;
        }
    }
    corpus.documents_ = std::move(documents);
    return corpus;
}

bool Corpus::contains(std::string_view term) const {
    return vocabulary_.find(std::string(term)) != vocabulary_.end();
}

std::size_t Corpus::term_count(std::string_view term) const {
    auto it = vocabulary_.find(std::string(term));
    return it == vocabulary_.end() ? 0 : it->second.term_count;
}

std::size_t Corpus::doc_frequency(std::string_view term) const {
    auto it = vocabulary_.find(std::string(term));
    return it == vocabulary_.end() ? 0 : it->second.doc_frequency;
}

namespace {

void ingest_csv(std::istream& in, const RowSink& sink) {
    std::vector<std::string> fields;
    std::size_t line_no = 0;
    if (!read_csv_record(in, fields, line_no)) {
        throw InputError("empty CSV input: header row is required");
    }
    long id_col = -1, ts_col = -1, text_col = -1, rt_col = -1;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == "id") id_col = static_cast<long>(i);
        else if (fields[i] == "timestamp") ts_col = static_cast<long>(i);
        else if (fields[i] == "text") text_col = static_cast<long>(i);
        else if (fields[i] == "is_retweet") rt_col = static_cast<long>(i);
    }
    if (id_col < 0 || ts_col < 0 || text_col < 0) {
        throw InputError("CSV header must name id, timestamp and text columns");
    }
    const std::size_t needed = static_cast<std::size_t>(
        std::max({id_col, ts_col, text_col, rt_col}) + 1);
    while (read_csv_record(in, fields, line_no)) {
        if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
        const std::size_t row_line = line_no;
        if (fields.size() < needed) {
            throw InputError("line " + std::to_string(row_line) + ": expected at least " +
                             std::to_string(needed) + " columns, got " +
                             std::to_string(fields.size()));
        }
        RawRow row;
        row.id = fields[static_cast<std::size_t>(id_col)];
        row.timestamp = fields[static_cast<std::size_t>(ts_col)];
        row.text = fields[static_cast<std::size_t>(text_col)];
        row.is_retweet = rt_col >= 0
                             ? parse_bool_flag(fields[static_cast<std::size_t>(rt_col)])
                             : text_is_retweet(row.text);
        sink(row, row_line);
    }
}

void ingest_jsonl(std::istream& in, const RowSink& sink) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw InputError("line " + std::to_string(line_no) +
                             ": invalid JSON: " + e.what());
        }
        if (!obj.is_object()) {
            throw InputError("line " + std::to_string(line_no) +
                             ": expected a JSON object");
        }
        RawRow row;
        for (const char* key : {"id", "timestamp", "text"}) {
            if (!obj.contains(key)) {
                throw InputError("line " + std::to_string(line_no) +
                                 ": missing key \"" + key + "\"");
            }
        }
        const auto& id = obj["id"];
        row.id = id.is_string() ? id.get<std::string>() : id.dump();
        if (!obj["timestamp"].is_string() || !obj["text"].is_string()) {
            throw InputError("line " + std::to_string(line_no) +
                             ": timestamp and text must be strings");
        }
        row.timestamp = obj["timestamp"].get<std::string>();
        row.text = obj["text"].get<std::string>();
        row.is_retweet = obj.contains("is_retweet")
                             ? obj["is_retweet"].is_boolean()
                                   ? obj["is_retweet"].get<bool>()
                                   : parse_bool_flag(obj["is_retweet"].dump())
                             : text_is_retweet(row.text);
        sink(row, line_no);
    }
}

}  // namespace

Corpus ingest(const std::filesystem::path& path, InputFormat format,
              const IngestOptions& options, IngestReport* report) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open input file: " + path.string());
    }
    IngestReport local;
    IngestReport& rep = report ? *report : local;
    Tokenizer tokenizer = Tokenizer::from_options(options);
    std::vector<Document> documents;

    const RowSink sink = [&](const RawRow& row, std::size_t line_no) {
        ++rep.rows_read;
        try {
            if (row.id.empty()) {
                throw InputError("empty id");
            }
            if (row.is_retweet) {
                ++rep.retweets_dropped;
                return;
            }
            Document doc;
            doc.id = row.id;
            doc.timestamp = parse_timestamp(row.timestamp);
            doc.tokens = tokenizer.tokenize(row.text);
            documents.push_back(std::move(doc));
        } catch (const InputError& e) {
            const std::string message =
                "line " + std::to_string(line_no) + ": " + e.what();
            if (!options.lenient) throw InputError(message);
            ++rep.rows_skipped;
            rep.warnings.push_back(message);
        }
    };

    // Structural errors (missing header, unterminated quote) stay fatal
    // even in lenient mode; only per-row errors are skippable in the sink.
    if (format == InputFormat::csv) {
        ingest_csv(in, sink);
    } else {
        ingest_jsonl(in, sink);
    }
    return Corpus::from_documents(std::move(documents), std::move(tokenizer));
}

std::vector<SeriesPoint> tweet_length_series(const Corpus& corpus) {
    std::vector<SeriesPoint> series;
    series.reserve(corpus.documents().size());
    for (const Document& doc : corpus.documents()) {
        series.push_back({doc.timestamp, static_cast<double>(doc.tokens.size())});
    }
    return series;
}

std::vector<SeriesPoint> event_occurrence_series(const Corpus& corpus,
                                                 std::string_view event) {
    std::vector<SeriesPoint> series;
    series.reserve(corpus.documents().size());
    for (const Document& doc : corpus.documents()) {
        const bool present =
            std::find(doc.tokens.begin(), doc.tokens.end(), event) != doc.tokens.end();
        series.push_back({doc.timestamp, present ? 1.0 : 0.0});
    }
    return series;
}

StatsReport corpus_stats(const Corpus& corpus) {
    StatsReport stats;
    stats.documents = corpus.documents().size();
    stats.vocabulary_size = corpus.vocabulary().size();
    stats.total_tokens = corpus.total_token_count();
    stats.mean_tokens_per_document =
        stats.documents == 0
            ? 0.0
            : static_cast<double>(stats.total_tokens) / static_cast<double>(stats.documents);
    if (!corpus.documents().empty()) {
        stats.first_timestamp = corpus.documents().front().timestamp;
        stats.last_timestamp = corpus.documents().back().timestamp;
    }
    return stats;
}

}  // namespace tcv
