#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace tcv {

// Options shared by file ingestion and text normalization.
struct IngestOptions {
    bool lenient = false;              // skip malformed rows instead of failing
    std::string stopword_file;         // empty -> built-in English list
    std::size_t min_token_len = 2;     // tokens shorter than this are dropped
};

// Normalization pipeline for tweet-like text:
//   split on whitespace; drop @mentions, #hashtags and URLs; lowercase
//   ASCII; strip punctuation (bytes >= 0x80 are kept as-is); drop
//   stopwords and tokens shorter than min_token_len.
// The same rules are applied to stopword entries when they are loaded,
// so "don't" in a stopword file matches the normalized token "dont".
class Tokenizer {
public:
    // Built-in English stopword list, min token length 2.
    Tokenizer();

    Tokenizer(std::unordered_set<std::string> stopwords, std::size_t min_token_len);

    static Tokenizer from_options(const IngestOptions& options);

    std::vector<std::string> tokenize(std::string_view text) const;

    bool is_stopword(const std::string& token) const;
    std::size_t min_token_len() const { return min_token_len_; }

private:
    // Shared so Corpus copies stay cheap.
    std::shared_ptr<const std::unordered_set<std::string>> stopwords_;
    std::size_t min_token_len_ = 2;
};

// Spec-level convenience: builds a Tokenizer from the options and runs it.
std::vector<std::string> normalize_tokenize(std::string_view text,
                                            const IngestOptions& options);

// One term per line, '#' starts a comment, blank lines ignored.
// Entries are normalized with the same character rules as tokens.
std::unordered_set<std::string> load_stopword_file(const std::filesystem::path& path);

const std::unordered_set<std::string>& builtin_stopwords();

}  // namespace tcv
