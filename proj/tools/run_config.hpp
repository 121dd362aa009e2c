#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace tcv::cli {

// Effective settings for one CLI run. A flat key=value config file can
// provide any field; command-line flags override it.
struct RunConfig {
    std::string input;                      // input corpus path
    std::string format;                     // csv | jsonl | "" (infer from extension)
    std::string stopwords;                  // stopword file; "" -> built-in list
    std::string query;
    std::string count_mode = "raw";         // raw | normalized
    double threshold = 1.0;                 // certainty threshold on uncertainty
    std::vector<std::string> schemes = {"tf", "tfidf", "thematic"};
    std::uint64_t k = 0;                    // fixed k; 0 means "use elbow"
    std::uint64_t k_max = 10;               // elbow search bound
    std::uint64_t seed = 0;                 // fixed default, never wall clock
    std::uint64_t restarts = 8;
    std::string out = "out";                // output directory
    bool lenient = false;
    bool dump_index = false;                // rank: also write index.json
};

struct ParsedCommand {
    std::string command;  // ingest | stats | series | rank | cluster | compare
    RunConfig config;
    bool help_shown = false;  // -h/--help handled; caller should exit 0
};

// Parses argv (including an optional --config FILE whose keys mirror the
// long flags) and validates the combination for the chosen subcommand.
// Throws ConfigError for unknown flags/keys, type mismatches and missing
// required inputs.
ParsedCommand parse_config(const std::vector<std::string>& args);

// Canonical JSON form of the effective config; its dump feeds the digest.
nlohmann::json to_json(const RunConfig& config);

}  // namespace tcv::cli
