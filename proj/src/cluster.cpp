#include "tcv/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "tcv/common.hpp"

namespace tcv {

const char* to_string(WeightScheme scheme) {
    switch (scheme) {
        case WeightScheme::tf: return "tf";
        case WeightScheme::tfidf: return "tfidf";
        case WeightScheme::thematic: return "thematic";
    }
    return "?";
}

WeightScheme parse_weight_scheme(std::string_view name) {
    if (name == "tf") return WeightScheme::tf;
    if (name == "tfidf") return WeightScheme::tfidf;
    if (name == "thematic") return WeightScheme::thematic;
    throw ConfigError("unknown weighting scheme: \"" + std::string(name) +
                      "\" (expected tf, tfidf or thematic)");
}

std::vector<DocVector> vectorize(const Corpus& corpus, WeightScheme scheme,
                                 const std::vector<ContextVector>& context) {
    std::map<std::string, double> min_event_weight;
    if (scheme == WeightScheme::thematic) {
        if (context.empty()) {
            throw ComputeError(
                "vectorize: the thematic scheme requires non-empty context vectors");
        }
        for (const ContextVector& cv : context) {
            for (const ContextEntry& entry : cv.entries) {
                auto [it, inserted] =
                    min_event_weight.try_emplace(entry.keyword, entry.ranked_weight);
                if (!inserted && entry.ranked_weight < it->second) {
                    it->second = entry.ranked_weight;
                }
            }
        }
    }

    const double doc_count = static_cast<double>(corpus.documents().size());
    std::vector<DocVector> vectors;
    vectors.reserve(corpus.documents().size());
    for (const Document& doc : corpus.documents()) {
        DocVector vec;
        vec.doc_id = doc.id;
        std::map<std::string, std::size_t> tf;
        for (const std::string& token : doc.tokens) ++tf[token];
        for (const auto& [term, count] : tf) {
            double weight = 0.0;
            switch (scheme) {
                case WeightScheme::tf:
                    weight = static_cast<double>(count);
                    break;
                case WeightScheme::tfidf:
                    weight = static_cast<double>(count) *
                             std::log2(doc_count /
                                       static_cast<double>(corpus.doc_frequency(term)));
                    break;
                case WeightScheme::thematic: {
                    auto it = min_event_weight.find(term);
                    if (it == min_event_weight.end()) continue;  // no associated event
                    weight = static_cast<double>(count) * it->second;
                    break;
                }
            }
            if (weight != 0.0) vec.components.emplace(term, weight);
        }
        vectors.push_back(std::move(vec));
    }
    return vectors;
}

namespace {

// Points as sorted (dimension, value) pairs over the active term space.
struct SparseMatrix {
    std::vector<std::string> terms;
    std::vector<std::vector<std::pair<std::size_t, double>>> points;
    std::vector<double> point_norms;  // squared
};

SparseMatrix index_vectors(const std::vector<DocVector>& vectors) {
    SparseMatrix m;
    std::set<std::string> term_set;
    for (const DocVector& vec : vectors) {
        for (const auto& [term, weight] : vec.components) term_set.insert(term);
    }
    m.terms.assign(term_set.begin(), term_set.end());
    std::map<std::string, std::size_t> dim;
    for (std::size_t i = 0; i < m.terms.size(); ++i) dim[m.terms[i]] = i;
    m.points.reserve(vectors.size());
    m.point_norms.reserve(vectors.size());
    for (const DocVector& vec : vectors) {
        std::vector<std::pair<std::size_t, double>> point;
        point.reserve(vec.components.size());
        double norm = 0.0;
        for (const auto& [term, weight] : vec.components) {
            point.emplace_back(dim[term], weight);
            norm += weight * weight;
        }
        m.points.push_back(std::move(point));
        m.point_norms.push_back(norm);
    }
    return m;
}

double centroid_norm2(const std::vector<double>& centroid) {
    double norm = 0.0;
    for (double v : centroid) norm += v * v;
    return norm;
}

// Squared Euclidean distance from a sparse point to a dense centroid,
// using  ||x - c||^2 = sum_{d in x} ((x_d - c_d)^2 - c_d^2) + ||c||^2.
double sq_distance(const std::vector<std::pair<std::size_t, double>>& point,
                   const std::vector<double>& centroid, double cnorm2) {
    double acc = 0.0;
    for (const auto& [d, x] : point) {
        const double diff = x - centroid[d];
        acc += diff * diff - centroid[d] * centroid[d];
    }
    return std::max(0.0, acc + cnorm2);
}

struct LloydState {
    std::vector<std::vector<double>> centroids;
    std::vector<std::size_t> assignments;
    double inertia = 0.0;
    std::size_t iterations = 0;
};

// Assignment pass; returns summed min squared distances (the inertia of
// this assignment under the current centroids). Ties go to the lowest
// cluster id.
double assign_points(const SparseMatrix& m,
                     const std::vector<std::vector<double>>& centroids,
                     std::vector<std::size_t>& assignments) {
    std::vector<double> cnorm(centroids.size());
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        cnorm[c] = centroid_norm2(centroids[c]);
    }
    double total = 0.0;
    for (std::size_t p = 0; p < m.points.size(); ++p) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_c = 0;
        for (std::size_t c = 0; c < centroids.size(); ++c) {
            const double d2 = sq_distance(m.points[p], centroids[c], cnorm[c]);
            if (d2 < best) {
                best = d2;
                best_c = c;
            }
        }
        assignments[p] = best_c;
        total += best;
    }
    return total;
}

// Mean of each cluster's members, accumulated in point order so the
// result does not depend on any parallel schedule. Empty clusters keep
// their previous centroid.
void update_centroids(const SparseMatrix& m, const std::vector<std::size_t>& assignments,
                      std::vector<std::vector<double>>& centroids) {
    const std::size_t k = centroids.size();
    const std::size_t dims = m.terms.size();
    std::vector<std::vector<double>> sums(k, std::vector<double>(dims, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t p = 0; p < m.points.size(); ++p) {
        const std::size_t c = assignments[p];
        ++counts[c];
        for (const auto& [d, x] : m.points[p]) sums[c][d] += x;
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) continue;
        for (std::size_t d = 0; d < dims; ++d) {
            sums[c][d] /= static_cast<double>(counts[c]);
        }
        centroids[c] = std::move(sums[c]);
    }
}

LloydState run_lloyd(const SparseMatrix& m, std::size_t k, std::uint64_t restart_seed,
                     std::size_t max_iter) {
    const std::size_t n = m.points.size();
    // Seeded draw of k distinct point indices (partial Fisher-Yates).
    std::mt19937_64 rng(restart_seed);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
        std::swap(order[i], order[j]);
    }
    LloydState state;
    state.centroids.assign(k, std::vector<double>(m.terms.size(), 0.0));
    for (std::size_t c = 0; c < k; ++c) {
        for (const auto& [d, x] : m.points[order[c]]) state.centroids[c][d] = x;
    }
    state.assignments.assign(n, 0);

    double prev_inertia = assign_points(m, state.centroids, state.assignments);
    state.iterations = 1;
    std::vector<std::size_t> next(n, 0);
    while (state.iterations < max_iter) {
        update_centroids(m, state.assignments, state.centroids);
        const double inertia = assign_points(m, state.centroids, next);
        // Lloyd's objective never increases; checked every iteration.
        if (inertia > prev_inertia * (1.0 + 1e-9) + 1e-12) {
            throw std::logic_error("kmeans: inertia increased across an iteration");
        }
        prev_inertia = inertia;
        if (next == state.assignments) break;
        state.assignments = next;
        ++state.iterations;
    }
    // Final centroids are the means of the converged assignment; the
    // reported inertia is measured against them.
    update_centroids(m, state.assignments, state.centroids);
    std::vector<double> cnorm(k);
    for (std::size_t c = 0; c < k; ++c) cnorm[c] = centroid_norm2(state.centroids[c]);
    state.inertia = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        state.inertia +=
            sq_distance(m.points[p], state.centroids[state.assignments[p]],
                        cnorm[state.assignments[p]]);
    }
    return state;
}

std::uint64_t restart_seed(std::uint64_t seed, std::size_t restart) {
    return seed + (static_cast<std::uint64_t>(restart) + 1) * 0x9E3779B97F4A7C15ULL;
}

}  // namespace

ClusteringResult kmeans(const std::vector<DocVector>& vectors, std::size_t k,
                        std::uint64_t seed, std::size_t max_iter,
                        std::size_t restarts) {
    if (k < 1 || k > vectors.size()) {
        throw ComputeError("kmeans: k = " + std::to_string(k) +
                           " out of range for " + std::to_string(vectors.size()) +
                           " vectors");
    }
    const bool any_nonempty =
        std::any_of(vectors.begin(), vectors.end(),
                    [](const DocVector& v) { return !v.empty(); });
    if (!any_nonempty) {
        throw ComputeError("kmeans: all document vectors are empty");
    }
    if (restarts == 0) restarts = 1;
    const SparseMatrix m = index_vectors(vectors);

    LloydState best;
    bool have_best = false;
    for (std::size_t r = 0; r < restarts; ++r) {
        LloydState state = run_lloyd(m, k, restart_seed(seed, r), max_iter);
        if (!have_best || state.inertia < best.inertia) {
            best = std::move(state);
            have_best = true;
        }
    }

    ClusteringResult result;
    result.k = k;
    result.assignments = std::move(best.assignments);
    result.terms = m.terms;
    result.centroids = std::move(best.centroids);
    result.inertia = best.inertia;
    result.seed = seed;
    result.iterations = best.iterations;
    return result;
}

std::vector<std::pair<std::size_t, double>> inertia_curve(
    const std::vector<DocVector>& vectors, std::size_t k_max, std::uint64_t seed,
    std::size_t restarts) {
    if (k_max < 1 || k_max > vectors.size()) {
        throw ComputeError("inertia_curve: k_max = " + std::to_string(k_max) +
                           " out of range for " + std::to_string(vectors.size()) +
                           " vectors");
    }
    std::vector<std::pair<std::size_t, double>> curve;
    curve.reserve(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) {
        curve.emplace_back(k, kmeans(vectors, k, seed, 100, restarts).inertia);
    }
    return curve;
}

std::size_t elbow_select(const std::vector<std::pair<std::size_t, double>>& curve) {
    if (curve.size() < 3) {
        throw ComputeError("elbow_select: need at least 3 curve points, got " +
                           std::to_string(curve.size()));
    }
    std::size_t best_k = curve[1].first;
    double best_dd = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
        const double dd =
            curve[i - 1].second - 2.0 * curve[i].second + curve[i + 1].second;
        if (dd > best_dd) {
            best_dd = dd;
            best_k = curve[i].first;
        }
    }
    return best_k;
}

double silhouette(const std::vector<DocVector>& vectors,
                  const std::vector<std::size_t>& assignments) {
    if (assignments.size() != vectors.size()) {
        throw ComputeError("silhouette: assignments do not match vectors");
    }
    const std::size_t n = vectors.size();
    std::map<std::size_t, std::vector<std::size_t>> clusters;
    for (std::size_t p = 0; p < n; ++p) clusters[assignments[p]].push_back(p);
    if (clusters.size() < 2) {
        throw ComputeError("silhouette: need at least 2 populated clusters");
    }

    const SparseMatrix m = index_vectors(vectors);
    auto distance = [&](std::size_t a, std::size_t b) {
        // ||x-y||^2 = ||x||^2 + ||y||^2 - 2*x.y over the sparse supports
        double dot = 0.0;
        const auto& pa = m.points[a];
        const auto& pb = m.points[b];
        std::size_t ia = 0, ib = 0;
        while (ia < pa.size() && ib < pb.size()) {
            if (pa[ia].first < pb[ib].first) ++ia;
            else if (pb[ib].first < pa[ia].first) ++ib;
            else { dot += pa[ia].second * pb[ib].second; ++ia; ++ib; }
        }
        return std::sqrt(std::max(0.0, m.point_norms[a] + m.point_norms[b] - 2.0 * dot));
    };

    double total = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        const std::vector<std::size_t>& own = clusters[assignments[p]];
        if (own.size() == 1) continue;  // singleton scores 0
        double a = 0.0;
        for (std::size_t q : own) {
            if (q != p) a += distance(p, q);
        }
        a /= static_cast<double>(own.size() - 1);
        double b = std::numeric_limits<double>::infinity();
        for (const auto& [cid, members] : clusters) {
            if (cid == assignments[p]) continue;
            double mean = 0.0;
            for (std::size_t q : members) mean += distance(p, q);
            mean /= static_cast<double>(members.size());
            b = std::min(b, mean);
        }
        const double denom = std::max(a, b);
        total += denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return total / static_cast<double>(n);
}

ComparisonReport compare_methods(const Corpus& corpus, const EventSet& events,
                                 const CompareOptions& options) {
    const bool wants_thematic =
        std::find(options.schemes.begin(), options.schemes.end(),
                  WeightScheme::thematic) != options.schemes.end();
    if (wants_thematic && events.empty()) {
        throw ComputeError("compare: the thematic scheme requires a non-empty event set");
    }

    std::vector<ContextVector> context;
    if (wants_thematic) {
        const CooccurrenceIndex index = CooccurrenceIndex::build(corpus);
        context = rank(build_ulist(index, events, options.mode));
    }

    ComparisonReport report;
    report.seed = options.seed;

    for (WeightScheme scheme : options.schemes) {
        std::vector<DocVector> vectors = vectorize(corpus, scheme, context);
        std::vector<DocVector> active;
        active.reserve(vectors.size());
        std::size_t skipped = 0;
        for (DocVector& vec : vectors) {
            if (vec.empty()) ++skipped;
            else active.push_back(std::move(vec));
        }
        if (active.empty()) {
            throw ComputeError(std::string("compare: every document is empty under ") +
                               to_string(scheme) + " weighting");
        }
        SchemeReport sr;
        sr.skipped_docs = skipped;
        const std::size_t k_max = std::min<std::size_t>(options.k_policy.k_max,
                                                        active.size());
        sr.inertia_curve = inertia_curve(active, k_max, options.seed, options.restarts);
        sr.k = options.k_policy.kind == KPolicy::Kind::fixed
                   ? options.k_policy.k
                   : elbow_select(sr.inertia_curve);
        const ClusteringResult clustering =
            kmeans(active, sr.k, options.seed, options.max_iter, options.restarts);
        sr.silhouette = silhouette(active, clustering.assignments);
        report.schemes[to_string(scheme)] = std::move(sr);
    }

    auto scheme_silhouette = [&](const char* name) -> const double* {
        auto it = report.schemes.find(name);
        return it == report.schemes.end() ? nullptr : &it->second.silhouette;
    };
    const double* thematic = scheme_silhouette("thematic");
    if (thematic) {
        if (const double* tf = scheme_silhouette("tf")) {
            report.deltas["thematic_minus_tf"] = *thematic - *tf;
        }
        if (const double* tfidf = scheme_silhouette("tfidf")) {
            report.deltas["thematic_minus_tfidf"] = *thematic - *tfidf;
        }
    }

    std::ostringstream canon;
    canon << "k_policy="
          << (options.k_policy.kind == KPolicy::Kind::fixed ? "fixed" : "elbow")
          << ";k=" << options.k_policy.k << ";k_max=" << options.k_policy.k_max
          << ";seed=" << options.seed << ";restarts=" << options.restarts
          << ";max_iter=" << options.max_iter
          << ";mode=" << (options.mode == CountMode::raw ? "raw" : "normalized")
          << ";schemes=";
    for (std::size_t i = 0; i < options.schemes.size(); ++i) {
        if (i) canon << ',';
        canon << to_string(options.schemes[i]);
    }
    report.config_digest = fnv1a64_hex(canon.str());
    return report;
}

nlohmann::json to_json(const ComparisonReport& report) {
    nlohmann::json schemes = nlohmann::json::object();
    for (const auto& [name, sr] : report.schemes) {
        nlohmann::json curve = nlohmann::json::array();
        for (const auto& [k, inertia] : sr.inertia_curve) {
            curve.push_back({k, inertia});
        }
        schemes[name] = {{"k", sr.k},
                         {"inertia_curve", std::move(curve)},
                         {"silhouette", sr.silhouette},
                         {"skipped_docs", sr.skipped_docs}};
    }
    return {{"schemes", std::move(schemes)},
            {"deltas", report.deltas},
            {"seed", report.seed},
            {"config_digest", report.config_digest}};
}

nlohmann::json to_json(const ClusteringResult& result,
                       const std::vector<DocVector>& vectors) {
    nlohmann::json assignments = nlohmann::json::array();
    for (std::size_t i = 0; i < result.assignments.size(); ++i) {
        assignments.push_back({{"doc_id", vectors[i].doc_id},
                               {"cluster", result.assignments[i]}});
    }
    return {{"k", result.k},
            {"assignments", std::move(assignments)},
            {"terms", result.terms},
            {"centroids", result.centroids},
            {"inertia", result.inertia},
            {"seed", result.seed},
            {"iterations", result.iterations}};
}

}  // namespace tcv
