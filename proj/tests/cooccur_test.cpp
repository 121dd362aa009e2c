#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "tcv/common.hpp"
#include "tcv/cooccur.hpp"
#include "test_util.hpp"

using namespace tcv;

namespace {

// Distinct terms of a token-list corpus, for oracle sweeps.
std::set<std::string> terms_of(const testutil::TokenLists& docs) {
    std::set<std::string> terms;
    for (const auto& doc : docs) terms.insert(doc.begin(), doc.end());
    return terms;
}

}  // namespace

TEST_CASE("build_index on S4") {
    const CooccurrenceIndex index = CooccurrenceIndex::build(testutil::s4());
    CHECK(index.doc_count() == 4);
    CHECK(index.total_token_count() == 10);
    REQUIRE(index.incidence().count("virus") == 1);
    CHECK(index.incidence().at("virus") == std::vector<std::size_t>{0, 1, 3});
    CHECK(index.pair_count("medical", "virus") == 2);
    CHECK(index.pair_count("virus", "medical") == 2);
    CHECK(index.pair_count("medical", "care") == 0);
    CHECK(index.pair_count("virus", "virus") == index.incidence_count("virus"));
    CHECK(index.term_count("virus") == 3);
    CHECK(index.term_count("zebra") == 0);
}

TEST_CASE("build_index on an empty corpus") {
    const CooccurrenceIndex index = CooccurrenceIndex::build(Corpus{});
    CHECK(index.doc_count() == 0);
    CHECK(index.incidence().empty());
    CHECK_THROWS_AS(term_probability(index, "anything"), ComputeError);
}

TEST_CASE("term_probability") {
    const CooccurrenceIndex index = CooccurrenceIndex::build(testutil::s4());
    CHECK(term_probability(index, "virus") == doctest::Approx(0.75));
    CHECK(term_probability(index, "zebra") == 0.0);

    const CooccurrenceIndex one =
        CooccurrenceIndex::build(testutil::make_corpus({{"alpha", "beta"}}));
    CHECK(term_probability(one, "alpha") == 1.0);
    CHECK(term_probability(one, "beta") == 1.0);
}

TEST_CASE("conditional_probability") {
    const CooccurrenceIndex index = CooccurrenceIndex::build(testutil::s4());
    CHECK(conditional_probability(index, "virus", "medical") == 1.0);
    CHECK(conditional_probability(index, "care", "medical") == 0.0);
    CHECK(conditional_probability(index, "panic", "panic") == 1.0);
    CHECK_THROWS_AS(conditional_probability(index, "virus", "zebra"), ComputeError);
}

TEST_CASE("event_count raw and normalized") {
    const CooccurrenceIndex index = CooccurrenceIndex::build(testutil::s4());
    CHECK(event_count(index, "medical", CountMode::raw) == 2.0);
    CHECK(event_count(index, "medical", CountMode::normalized) == doctest::Approx(0.5));
    CHECK(event_count(index, "zebra", CountMode::raw) == 0.0);
    CHECK(event_count(index, "zebra", CountMode::normalized) == 0.0);
}

TEST_CASE("cooccurs guard") {
    const CooccurrenceIndex index = CooccurrenceIndex::build(testutil::s4());
    CHECK(cooccurs(index, "virus", "medical"));
    CHECK_FALSE(cooccurs(index, "care", "medical"));
    for (const char* term : {"medical", "virus", "emergency", "lockdown", "care",
                             "panic"}) {
        CHECK(cooccurs(index, term, term));
    }
    CHECK_FALSE(cooccurs(index, "zebra", "medical"));
}

TEST_CASE("contextual_entropy matches hand evaluation") {
    const CooccurrenceIndex index = CooccurrenceIndex::build(testutil::s4());
    // -(0.5*1 + 0.75*log2(4/3) + 1*0)
    CHECK(contextual_entropy(index, "virus", "medical") ==
          doctest::Approx(-0.8112781).epsilon(1e-6));
    // -(0.25*2 + 0.5*1 + 0)
    CHECK(contextual_entropy(index, "panic", "care") == doctest::Approx(-1.0));

    const CooccurrenceIndex one =
        CooccurrenceIndex::build(testutil::make_corpus({{"alpha", "beta"}}));
    CHECK(contextual_entropy(one, "beta", "alpha") == 0.0);
}

TEST_CASE("information_gain") {
    const CooccurrenceIndex index = CooccurrenceIndex::build(testutil::s4());
    CHECK(information_gain(index, "virus", "medical", CountMode::raw) ==
          doctest::Approx(-1.6225562).epsilon(1e-6));
    CHECK(information_gain(index, "virus", "medical", CountMode::normalized) ==
          doctest::Approx(-0.4056390).epsilon(1e-6));

    const CooccurrenceIndex one =
        CooccurrenceIndex::build(testutil::make_corpus({{"alpha", "beta"}}));
    CHECK(information_gain(one, "beta", "alpha", CountMode::raw) == 0.0);
}

TEST_CASE("uncertainty") {
    const CooccurrenceIndex index = CooccurrenceIndex::build(testutil::s4());
    CHECK(uncertainty(index, "virus", "medical", CountMode::raw) ==
          doctest::Approx(2.6225562).epsilon(1e-6));
    CHECK(uncertainty(index, "panic", "care", CountMode::raw) ==
          doctest::Approx(2.0).epsilon(1e-9));

    const CooccurrenceIndex one =
        CooccurrenceIndex::build(testutil::make_corpus({{"alpha", "beta"}}));
    CHECK(uncertainty(one, "beta", "alpha", CountMode::raw) == 1.0);  // exact
}

TEST_CASE("ranked_weight") {
    const CooccurrenceIndex index = CooccurrenceIndex::build(testutil::s4());
    CHECK(ranked_weight(index, "virus", "medical", CountMode::raw) ==
          doctest::Approx(2.9225562).epsilon(1e-6));
    CHECK(ranked_weight(index, "panic", "care", CountMode::raw) ==
          doctest::Approx(2.2).epsilon(1e-9));

    const CooccurrenceIndex one =
        CooccurrenceIndex::build(testutil::make_corpus({{"alpha", "beta"}}));
    CHECK(ranked_weight(one, "beta", "alpha", CountMode::raw) == doctest::Approx(1.5));

    const CooccurrenceIndex empty = CooccurrenceIndex::build(Corpus{});
    CHECK_THROWS_AS(ranked_weight(empty, "a", "b", CountMode::raw), ComputeError);
}

TEST_CASE("evaluate_pair agrees with the individual operations") {
    const CooccurrenceIndex index = CooccurrenceIndex::build(testutil::s4());
    const UncertaintyRecord record =
        evaluate_pair(index, "virus", "medical", CountMode::raw);
    CHECK(record.entropy == contextual_entropy(index, "virus", "medical"));
    CHECK(record.info_gain == information_gain(index, "virus", "medical", CountMode::raw));
    CHECK(record.uncertainty == uncertainty(index, "virus", "medical", CountMode::raw));
    CHECK(record.ranked_weight ==
          ranked_weight(index, "virus", "medical", CountMode::raw));
    CHECK(record.uncertainty == 1.0 - record.info_gain);  // exact by construction
}

TEST_CASE("uncertainty is exactly 1 when all probabilities are 1") {
    // Both terms in every document.
    const CooccurrenceIndex index = CooccurrenceIndex::build(
        testutil::make_corpus({{"alpha", "beta"}, {"beta", "alpha", "alpha"}}));
    CHECK(contextual_entropy(index, "beta", "alpha") == 0.0);
    CHECK(uncertainty(index, "beta", "alpha", CountMode::raw) == 1.0);
    CHECK(uncertainty(index, "alpha", "beta", CountMode::normalized) == 1.0);
}

TEST_CASE("entropy summand and value stay inside the analytic bounds") {
    const double peak = std::log2(std::exp(1.0)) / std::exp(1.0);  // log2(e)/e
    std::mt19937_64 rng(0xBEEF);
    for (int trial = 0; trial < 500; ++trial) {
        const double p = static_cast<double>(rng() % 10001) / 10000.0;
        const double summand = detail::plog2_inverse(p);
        CHECK(summand >= 0.0);
        CHECK(summand <= peak + 1e-12);
    }
    for (int trial = 0; trial < 300; ++trial) {
        const auto docs = testutil::random_docs(rng);
        const CooccurrenceIndex index =
            CooccurrenceIndex::build(testutil::make_corpus(docs));
        for (const auto& [event, edocs] : index.incidence()) {
            for (const auto& [keyword, kdocs] : index.incidence()) {
                const double h = contextual_entropy(index, keyword, event);
                CHECK(h >= -(2.0 * peak) - 1e-12);
                CHECK(h <= peak + 1e-12);
            }
        }
    }
}

TEST_CASE("pair_count symmetry and guard equivalence on random corpora") {
    std::mt19937_64 rng(0xFACADE);
    for (int trial = 0; trial < 300; ++trial) {
        const auto docs = testutil::random_docs(rng);
        const CooccurrenceIndex index =
            CooccurrenceIndex::build(testutil::make_corpus(docs));
        for (const auto& [a, adocs] : index.incidence()) {
            for (const auto& [b, bdocs] : index.incidence()) {
                const std::size_t ab = index.pair_count(a, b);
                CHECK(ab == index.pair_count(b, a));
                CHECK(ab <= index.doc_count());
                // three-way equivalence
                const bool guard = cooccurs(index, a, b);
                CHECK(guard == (ab > 0));
                CHECK(guard == (conditional_probability(index, a, b) > 0.0));
            }
        }
    }
}

TEST_CASE("ranked_weight minus uncertainty is the frequency share in (0, 1]") {
    std::mt19937_64 rng(0xDECADE);
    for (int trial = 0; trial < 300; ++trial) {
        const auto docs = testutil::random_docs(rng);
        const auto corpus = testutil::make_corpus(docs);
        if (corpus.total_token_count() == 0) continue;
        const CooccurrenceIndex index = CooccurrenceIndex::build(corpus);
        for (const auto& [keyword, kdocs] : index.incidence()) {
            for (const auto& [event, edocs] : index.incidence()) {
                const double diff =
                    ranked_weight(index, keyword, event, CountMode::raw) -
                    uncertainty(index, keyword, event, CountMode::raw);
                CHECK(diff > 0.0);
                CHECK(diff <= 1.0 + 1e-15);
            }
        }
    }
}

TEST_CASE("implementation matches the direct-from-definition oracle") {
    std::mt19937_64 rng(0x5EED);
    int corpora_checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const auto docs = testutil::random_docs(rng);
        const auto corpus = testutil::make_corpus(docs);
        if (corpus.total_token_count() == 0) continue;
        const CooccurrenceIndex index = CooccurrenceIndex::build(corpus);
        ++corpora_checked;
        for (const std::string& keyword : terms_of(docs)) {
            for (const std::string& event : terms_of(docs)) {
                CHECK(term_probability(index, keyword) ==
                      doctest::Approx(oracle::p(docs, keyword)).epsilon(1e-12));
                CHECK(conditional_probability(index, keyword, event) ==
                      doctest::Approx(oracle::p_cond(docs, keyword, event))
                          .epsilon(1e-12));
                for (const bool normalized : {false, true}) {
                    const CountMode mode =
                        normalized ? CountMode::normalized : CountMode::raw;
                    CHECK(contextual_entropy(index, keyword, event) ==
                          doctest::Approx(oracle::entropy(docs, keyword, event))
                              .epsilon(1e-12));
                    CHECK(information_gain(index, keyword, event, mode) ==
                          doctest::Approx(
                              oracle::info_gain(docs, keyword, event, normalized))
                              .epsilon(1e-12));
                    CHECK(uncertainty(index, keyword, event, mode) ==
                          doctest::Approx(
                              oracle::uncertainty(docs, keyword, event, normalized))
                              .epsilon(1e-12));
                    CHECK(ranked_weight(index, keyword, event, mode) ==
                          doctest::Approx(
                              oracle::ranked_weight(docs, keyword, event, normalized))
                              .epsilon(1e-12));
                }
            }
        }
    }
    CHECK(corpora_checked > 100);
}
