#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tcv/corpus.hpp"
#include "tcv/thematic.hpp"

namespace tcv {

// Sparse document embedding. No explicit zero entries; the ordered map
// keeps the term order deterministic.
struct DocVector {
    std::string doc_id;
    std::map<std::string, double> components;

    bool empty() const { return components.empty(); }
};

enum class WeightScheme { tf, tfidf, thematic };

const char* to_string(WeightScheme scheme);
WeightScheme parse_weight_scheme(std::string_view name);

// One DocVector per corpus document, corpus order.
//   tf        raw term counts
//   tfidf     tf * log2(N / df), terms present everywhere vanish
//   thematic  tf * min-over-events ranked_weight(term, event), using the
//             guarded associations carried by the context vectors; terms
//             associated with no event are dropped
// The thematic scheme throws ComputeError without a non-empty context.
std::vector<DocVector> vectorize(const Corpus& corpus, WeightScheme scheme,
                                 const std::vector<ContextVector>& context = {});

struct ClusteringResult {
    std::size_t k = 0;
    std::vector<std::size_t> assignments;          // index into the input vectors
    std::vector<std::string> terms;                // active term space, sorted
    std::vector<std::vector<double>> centroids;    // k rows over `terms`
    double inertia = 0.0;
    std::uint64_t seed = 0;
    std::size_t iterations = 0;                    // of the winning restart
};

// Lloyd's algorithm, best of `restarts` by inertia, fully deterministic:
// restart r seeds an mt19937_64 with seed + (r+1)*0x9E3779B97F4A7C15 and
// picks k distinct point indices by partial Fisher-Yates (j = i + rng() %
// (n-i)); assignment ties go to the lowest cluster id; empty clusters
// keep their previous centroid. Converges when assignments stop changing
// or max_iter is reached.
ClusteringResult kmeans(const std::vector<DocVector>& vectors, std::size_t k,
                        std::uint64_t seed, std::size_t max_iter = 100,
                        std::size_t restarts = 8);

// One kmeans run per k in 1..k_max, same seed policy for every k.
std::vector<std::pair<std::size_t, double>> inertia_curve(
    const std::vector<DocVector>& vectors, std::size_t k_max, std::uint64_t seed,
    std::size_t restarts = 8);

// The k whose discrete second difference of inertia is largest
// (ties -> smallest k). Needs at least 3 curve points.
std::size_t elbow_select(const std::vector<std::pair<std::size_t, double>>& curve);

// Mean silhouette over all points: (b - a) / max(a, b) with Euclidean
// distances; singleton-cluster points score 0. Throws ComputeError when
// fewer than 2 clusters are populated.
double silhouette(const std::vector<DocVector>& vectors,
                  const std::vector<std::size_t>& assignments);

struct KPolicy {
    enum class Kind { fixed, elbow };
    Kind kind = Kind::elbow;
    std::size_t k = 0;        // fixed
    std::size_t k_max = 10;   // elbow
};

struct SchemeReport {
    std::size_t k = 0;
    std::vector<std::pair<std::size_t, double>> inertia_curve;
    double silhouette = 0.0;
    std::size_t skipped_docs = 0;  // empty documents excluded from clustering
};

struct ComparisonReport {
    std::map<std::string, SchemeReport> schemes;   // keyed tf | tfidf | thematic
    std::map<std::string, double> deltas;          // thematic_minus_tf, thematic_minus_tfidf
    std::uint64_t seed = 0;
    std::string config_digest;
};

struct CompareOptions {
    KPolicy k_policy;
    std::uint64_t seed = 0;
    std::size_t restarts = 8;
    std::size_t max_iter = 100;
    CountMode mode = CountMode::raw;
    std::vector<WeightScheme> schemes = {WeightScheme::tf, WeightScheme::tfidf,
                                         WeightScheme::thematic};
};

// Runs vectorize -> inertia_curve -> k selection -> kmeans -> silhouette
// per scheme, skipping empty documents, and reports silhouette deltas
// for the scheme pairs present. Pure function of its arguments.
ComparisonReport compare_methods(const Corpus& corpus, const EventSet& events,
                                 const CompareOptions& options);

nlohmann::json to_json(const ComparisonReport& report);
nlohmann::json to_json(const ClusteringResult& result,
                       const std::vector<DocVector>& vectors);

}  // namespace tcv
