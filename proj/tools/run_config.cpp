#include "run_config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "tcv/common.hpp"

namespace tcv::cli {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        if (!value.empty() && value[0] == '-') throw std::invalid_argument("negative");
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key \"" + key + "\": expected a non-negative integer, got \"" +
                          value + "\"");
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key \"" + key + "\": expected a number, got \"" + value +
                          "\"");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config key \"" + key + "\": expected true or false, got \"" + value +
                      "\"");
}

// Flat key=value file; keys mirror the long flag names. '#' starts a
// comment line. Unknown keys are rejected.
void apply_config_file(const std::string& path, RunConfig& config) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config file " + path + " line " + std::to_string(line_no) +
                              ": expected key = value");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key == "input") config.input = value;
        else if (key == "format") config.format = value;
        else if (key == "stopwords") config.stopwords = value;
        else if (key == "query") config.query = value;
        else if (key == "count-mode") config.count_mode = value;
        else if (key == "threshold") config.threshold = parse_double(key, value);
        else if (key == "schemes") config.schemes = split_csv_list(value);
        else if (key == "k") config.k = parse_uint(key, value);
        else if (key == "k-max") config.k_max = parse_uint(key, value);
        else if (key == "seed") config.seed = parse_uint(key, value);
        else if (key == "restarts") config.restarts = parse_uint(key, value);
        else if (key == "out") config.out = value;
        else if (key == "lenient") config.lenient = parse_bool(key, value);
        else if (key == "dump-index") config.dump_index = parse_bool(key, value);
        else {
            throw ConfigError("unknown config key \"" + key + "\" in " + path);
        }
    }
}

const std::set<std::string> kCommands = {"ingest", "stats",   "series",
                                         "rank",   "cluster", "compare"};

void add_common_options(CLI::App* cmd, RunConfig& config, std::string& config_file) {
    cmd->add_option("--config", config_file, "flat key=value config file");
    cmd->add_option("--input", config.input, "input corpus file");
    cmd->add_option("--format", config.format, "csv or jsonl (default: by extension)");
    cmd->add_option("--stopwords", config.stopwords, "stopword file (one term per line)");
    cmd->add_option("--query", config.query, "query text; events are its in-vocabulary terms");
    cmd->add_option("--count-mode", config.count_mode, "raw or normalized event count");
    cmd->add_option("--threshold", config.threshold, "certainty threshold on uncertainty");
    cmd->add_option("--schemes", config.schemes, "weighting schemes (comma separated)")
        ->delimiter(',');
    cmd->add_option("--k", config.k, "fixed cluster count (overrides elbow selection)");
    cmd->add_option("--k-max", config.k_max, "elbow search upper bound");
    cmd->add_option("--seed", config.seed, "RNG seed");
    cmd->add_option("--restarts", config.restarts, "k-means restarts");
    cmd->add_option("--out", config.out, "output directory");
    cmd->add_flag("--lenient", config.lenient, "skip malformed rows instead of failing");
    cmd->add_flag("--dump-index", config.dump_index, "also write the co-occurrence index");
}

void validate(const std::string& command, const RunConfig& config, bool k_given,
              bool k_max_given) {
    if (config.input.empty()) {
        throw ConfigError(command + ": missing required --input");
    }
    if (!config.format.empty() && config.format != "csv" && config.format != "jsonl") {
        throw ConfigError("config key \"format\": expected csv or jsonl, got \"" +
                          config.format + "\"");
    }
    if (config.count_mode != "raw" && config.count_mode != "normalized") {
        throw ConfigError("config key \"count-mode\": expected raw or normalized, got \"" +
                          config.count_mode + "\"");
    }
    if (!std::isfinite(config.threshold)) {
        throw ConfigError("config key \"threshold\": must be finite");
    }
    if (config.schemes.empty()) {
        throw ConfigError("config key \"schemes\": at least one scheme is required");
    }
    for (const std::string& scheme : config.schemes) {
        if (scheme != "tf" && scheme != "tfidf" && scheme != "thematic") {
            throw ConfigError("config key \"schemes\": unknown scheme \"" + scheme + "\"");
        }
    }
    if (k_given && k_max_given) {
        throw ConfigError("give either --k (fixed) or --k-max (elbow), not both");
    }
    if (k_given && config.k == 0) {
        throw ConfigError("config key \"k\": must be at least 1");
    }
    if (config.k == 0 && config.k_max < 3) {
        throw ConfigError("config key \"k-max\": elbow selection needs k-max >= 3");
    }
    const bool wants_thematic =
        std::find(config.schemes.begin(), config.schemes.end(), "thematic") !=
        config.schemes.end();
    if (command == "rank" && config.query.empty()) {
        throw ConfigError("rank: missing required --query");
    }
    if (command == "compare" && wants_thematic && config.query.empty()) {
        throw ConfigError("compare: missing required --query (the thematic scheme "
                          "derives its events from it)");
    }
    if (command == "cluster" && config.schemes.front() == "thematic" &&
        config.query.empty()) {
        throw ConfigError("cluster: missing required --query for the thematic scheme");
    }
    if (command == "compare" || command == "cluster") {
        if (config.restarts == 0) {
            throw ConfigError("config key \"restarts\": must be at least 1");
        }
    }
}

}  // namespace

ParsedCommand parse_config(const std::vector<std::string>& args) {
    ParsedCommand parsed;

    // The config file provides defaults, flags override it; to get that
    // precedence the file is located and applied before CLI11 assigns
    // flag values over the same struct.
    std::string config_file;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_file = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_file = args[i].substr(9);
        }
    }
    if (!config_file.empty()) {
        apply_config_file(config_file, parsed.config);
    }

    CLI::App app{"thematic context vectors from timestamped short-text corpora", "tcv"};
    app.require_subcommand(1);
    std::string config_file_opt;  // value already applied above
    for (const std::string& name : kCommands) {
        CLI::App* sub = app.add_subcommand(name);
        add_common_options(sub, parsed.config, config_file_opt);
    }

    std::vector<const char*> argv;
    argv.push_back("tcv");
    for (const std::string& arg : args) argv.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream help;
        help << app.help();
        std::fputs(help.str().c_str(), stdout);
        parsed.help_shown = true;
        return parsed;
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    CLI::App* sub = app.get_subcommands().front();
    parsed.command = sub->get_name();
    validate(parsed.command, parsed.config, sub->count("--k") > 0,
             sub->count("--k-max") > 0);
    return parsed;
}

nlohmann::json to_json(const RunConfig& config) {
    return {{"input", config.input},
            {"format", config.format},
            {"stopwords", config.stopwords},
            {"query", config.query},
            {"count_mode", config.count_mode},
            {"threshold", config.threshold},
            {"schemes", config.schemes},
            {"k", config.k},
            {"k_max", config.k_max},
            {"seed", config.seed},
            {"restarts", config.restarts},
            {"out", config.out},
            {"lenient", config.lenient},
            {"dump_index", config.dump_index}};
}

}  // namespace tcv::cli
