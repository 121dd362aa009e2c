#include "tcv/tokenizer.hpp"

#include <cctype>
#include <fstream>

#include "tcv/common.hpp"

namespace tcv {

namespace {

bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool keep_char(char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) != 0 || u >= 0x80;  // bytes of multi-byte UTF-8 pass
}

char lower(char c) {
    const auto u = static_cast<unsigned char>(c);
    return u < 0x80 ? static_cast<char>(std::tolower(u)) : c;
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

// Lowercase + strip punctuation; empty result means "drop".
std::string clean_token(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        if (keep_char(c)) out.push_back(lower(c));
    }
    return out;
}

bool is_url(std::string_view lowered) {
    return starts_with(lowered, "http://") || starts_with(lowered, "https://") ||
           starts_with(lowered, "www.");
}

std::string to_lower_copy(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = lower(c);
    return out;
}

}  // namespace

Tokenizer::Tokenizer()
    : stopwords_(std::shared_ptr<const std::unordered_set<std::string>>(
          &builtin_stopwords(), [](const void*) {})) {}

Tokenizer::Tokenizer(std::unordered_set<std::string> stopwords,
                     std::size_t min_token_len)
    : stopwords_(std::make_shared<const std::unordered_set<std::string>>(
          std::move(stopwords))),
      min_token_len_(min_token_len) {}

Tokenizer Tokenizer::from_options(const IngestOptions& options) {
    if (options.stopword_file.empty()) {
        Tokenizer t;
        t.min_token_len_ = options.min_token_len;
        return t;
    }
    return Tokenizer(load_stopword_file(options.stopword_file),
                     options.min_token_len);
}

bool Tokenizer::is_stopword(const std::string& token) const {
    return stopwords_->count(token) > 0;
}

std::vector<std::string> Tokenizer::tokenize(std::string_view text) const {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t start = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        if (i == start) break;
        std::string_view raw = text.substr(start, i - start);

        if (raw.front() == '@' || raw.front() == '#') continue;
        if (is_url(to_lower_copy(raw))) continue;

        std::string token = clean_token(raw);
        if (token.size() < min_token_len_) continue;
        if (is_stopword(token)) continue;
        tokens.push_back(std::move(token));
    }
    return tokens;
}

std::vector<std::string> normalize_tokenize(std::string_view text,
                                            const IngestOptions& options) {
    return Tokenizer::from_options(options).tokenize(text);
}

std::unordered_set<std::string> load_stopword_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open stopword file: " + path.string());
    }
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // same character rules as token normalization
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && is_space(line[i])) ++i;
            std::size_t start = i;
            while (i < line.size() && !is_space(line[i])) ++i;
            if (i > start) {
                std::string w = clean_token(line.substr(start, i - start));
                if (!w.empty()) words.insert(std::move(w));
            }
        }
    }
    return words;
}

}  // namespace tcv
