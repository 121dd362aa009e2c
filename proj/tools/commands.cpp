#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tcv/cluster.hpp"
#include "tcv/common.hpp"
#include "tcv/cooccur.hpp"
#include "tcv/corpus.hpp"
#include "tcv/thematic.hpp"

namespace fs = std::filesystem;

namespace tcv::cli {

namespace {

InputFormat resolve_format(const RunConfig& config) {
    if (config.format == "csv") return InputFormat::csv;
    if (config.format == "jsonl") return InputFormat::jsonl;
    const std::string ext = fs::path(config.input).extension().string();
    return (ext == ".jsonl" || ext == ".ndjson" || ext == ".json") ? InputFormat::jsonl
                                                                   : InputFormat::csv;
}

CountMode resolve_mode(const RunConfig& config) {
    return config.count_mode == "normalized" ? CountMode::normalized : CountMode::raw;
}

KPolicy resolve_k_policy(const RunConfig& config) {
    KPolicy policy;
    if (config.k > 0) {
        policy.kind = KPolicy::Kind::fixed;
        policy.k = config.k;
    } else {
        policy.kind = KPolicy::Kind::elbow;
        policy.k_max = config.k_max;
    }
    return policy;
}

std::string file_digest(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open input file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return fnv1a64_hex(buf.str());
}

// Collects output files so a failed stage can remove what it wrote.
class OutputDir {
public:
    explicit OutputDir(const fs::path& dir) : dir_(dir) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) {
            throw InputError("cannot create output directory " + dir_.string() + ": " +
                             ec.message());
        }
    }

    void write_text(const std::string& name, const std::string& content) {
        const fs::path path = dir_ / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw InputError("cannot write output file: " + path.string());
        }
        out << content;
        out.close();
        written_.push_back(name);
    }

    void write_json(const std::string& name, const nlohmann::json& value) {
        write_text(name, value.dump(2) + "\n");
    }

    const std::vector<std::string>& written() const { return written_; }

    void remove_written() {
        for (const std::string& name : written_) {
            std::error_code ec;
            fs::remove(dir_ / name, ec);
        }
        written_.clear();
    }

private:
    fs::path dir_;
    std::vector<std::string> written_;
};

std::string inertia_curve_csv(const std::vector<std::pair<std::size_t, double>>& curve) {
    std::ostringstream out;
    out << "k,inertia\n";
    for (const auto& [k, inertia] : curve) {
        out << k << ',' << nlohmann::json(inertia).dump() << '\n';
    }
    return out.str();
}

std::string series_csv(const std::vector<SeriesPoint>& series) {
    std::ostringstream out;
    out << "timestamp,value\n";
    for (const SeriesPoint& point : series) {
        out << format_timestamp(point.timestamp) << ','
            << nlohmann::json(point.value).dump() << '\n';
    }
    return out.str();
}

nlohmann::json stats_json(const StatsReport& stats) {
    nlohmann::json out = {{"documents", stats.documents},
                          {"vocabulary_size", stats.vocabulary_size},
                          {"total_tokens", stats.total_tokens},
                          {"mean_tokens_per_document", stats.mean_tokens_per_document}};
    out["first_timestamp"] =
        stats.first_timestamp ? nlohmann::json(format_timestamp(*stats.first_timestamp))
                              : nlohmann::json();
    out["last_timestamp"] =
        stats.last_timestamp ? nlohmann::json(format_timestamp(*stats.last_timestamp))
                             : nlohmann::json();
    return out;
}

nlohmann::json index_json(const CooccurrenceIndex& index) {
    nlohmann::json terms = nlohmann::json::object();
    for (const auto& [term, docs] : index.incidence()) {
        terms[term] = docs;
    }
    return {{"doc_count", index.doc_count()},
            {"total_token_count", index.total_token_count()},
            {"incidence", std::move(terms)}};
}

std::vector<WeightScheme> resolve_schemes(const RunConfig& config) {
    std::vector<WeightScheme> schemes;
    for (const std::string& name : config.schemes) {
        schemes.push_back(parse_weight_scheme(name));
    }
    return schemes;
}

void run_stage(const std::string& command, const RunConfig& config, OutputDir& out,
               Corpus& corpus) {
    const CountMode mode = resolve_mode(config);

    if (command == "ingest") {
        std::ostringstream dump;
        for (const Document& doc : corpus.documents()) {
            dump << nlohmann::json{{"id", doc.id},
                                   {"timestamp", format_timestamp(doc.timestamp)},
                                   {"tokens", doc.tokens}}
                        .dump()
                 << '\n';
        }
        out.write_text("corpus.jsonl", dump.str());
        return;
    }

    if (command == "stats") {
        out.write_json("stats.json", stats_json(corpus_stats(corpus)));
        return;
    }

    if (command == "series") {
        out.write_text("tweet_length.csv", series_csv(tweet_length_series(corpus)));
        const EventSet events = extract_events(config.query, corpus);
        for (const std::string& event : events.events) {
            out.write_text("event_" + event + ".csv",
                           series_csv(event_occurrence_series(corpus, event)));
        }
        return;
    }

    if (command == "rank") {
        const CooccurrenceIndex index = CooccurrenceIndex::build(corpus);
        const EventSet events = extract_events(config.query, corpus);
        if (events.empty()) {
            std::cerr << "warning: query matched no vocabulary terms; "
                         "writing empty context vectors\n";
        }
        std::vector<ContextVector> cvs = rank(build_ulist(index, events, mode));
        for (ContextVector& cv : cvs) {
            cv = partition_certainty(std::move(cv), config.threshold);
        }
        out.write_json("context_vectors.json", to_json(cvs));
        std::ostringstream csv;
        write_context_vectors_csv(csv, cvs);
        out.write_text("context_vectors.csv", csv.str());
        if (config.dump_index) {
            out.write_json("index.json", index_json(index));
        }
        return;
    }

    if (command == "cluster") {
        const WeightScheme scheme = resolve_schemes(config).front();
        std::vector<ContextVector> context;
        if (scheme == WeightScheme::thematic) {
            const CooccurrenceIndex index = CooccurrenceIndex::build(corpus);
            context = rank(build_ulist(index, extract_events(config.query, corpus), mode));
        }
        std::vector<DocVector> vectors = vectorize(corpus, scheme, context);
        std::vector<DocVector> active;
        std::size_t skipped = 0;
        for (DocVector& vec : vectors) {
            if (vec.empty()) ++skipped;
            else active.push_back(std::move(vec));
        }
        if (skipped > 0) {
            std::cerr << "warning: " << skipped
                      << " empty document(s) excluded from clustering\n";
        }
        const KPolicy policy = resolve_k_policy(config);
        std::size_t k = policy.k;
        if (policy.kind == KPolicy::Kind::elbow) {
            const std::size_t k_max = std::min<std::size_t>(policy.k_max, active.size());
            const auto curve = inertia_curve(active, k_max, config.seed, config.restarts);
            out.write_text("inertia_curve.csv", inertia_curve_csv(curve));
            k = elbow_select(curve);
        }
        const ClusteringResult result =
            kmeans(active, k, config.seed, 100, config.restarts);
        nlohmann::json doc = to_json(result, active);
        doc["scheme"] = to_string(scheme);
        doc["skipped_docs"] = skipped;
        out.write_json("clustering.json", doc);
        return;
    }

    if (command == "compare") {
        CompareOptions options;
        options.k_policy = resolve_k_policy(config);
        options.seed = config.seed;
        options.restarts = config.restarts;
        options.mode = mode;
        options.schemes = resolve_schemes(config);
        const EventSet events = extract_events(config.query, corpus);
        ComparisonReport report = compare_methods(corpus, events, options);
        report.config_digest = fnv1a64_hex(to_json(config).dump());
        out.write_json("compare.json", to_json(report));
        for (const auto& [scheme, sr] : report.schemes) {
            out.write_text("inertia_curve_" + scheme + ".csv",
                           inertia_curve_csv(sr.inertia_curve));
        }
        return;
    }

    throw ConfigError("unknown command: " + command);
}

}  // namespace

void execute(const std::string& command, const RunConfig& config) {
    const fs::path input = config.input;
    IngestOptions ingest_options;
    ingest_options.lenient = config.lenient;
    ingest_options.stopword_file = config.stopwords;

    IngestReport ingest_report;
    Corpus corpus = ingest(input, resolve_format(config), ingest_options, &ingest_report);
    for (const std::string& warning : ingest_report.warnings) {
        std::cerr << "warning: skipped row: " << warning << '\n';
    }
    if (ingest_report.rows_skipped > 0) {
        std::cerr << "warning: " << ingest_report.rows_skipped << " of "
                  << ingest_report.rows_read << " rows skipped\n";
    }

    OutputDir out{fs::path(config.out)};
    try {
        run_stage(command, config, out, corpus);

        const nlohmann::json config_json = to_json(config);
        nlohmann::json manifest = {{"command", command},
                                   {"config", config_json},
                                   {"config_digest", fnv1a64_hex(config_json.dump())},
                                   {"input_digest", file_digest(input)},
                                   {"tool_version", kToolVersion}};
        manifest["outputs"] = out.written();
        out.write_json("manifest.json", manifest);
    } catch (...) {
        out.remove_written();
        throw;
    }
}

}  // namespace tcv::cli
