#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kex/errors.hpp"
#include "kex/textrank.hpp"

#include "support/oracles.hpp"
#include "support/synthetic.hpp"

#include <random>
#include <sstream>

using namespace kex;

namespace {

const char* kSanityText =
    "This is a very cute dog. This is another cute cat. This dog and this cat are cute.";

CooccurrenceGraph sanity_graph(int window = 5) {
    PipelineConfig config;
    return build_graph(filter_tokens(tokenize(kSanityText), config), window);
}

int weight_between(const CooccurrenceGraph& g, const std::string& a, const std::string& b) {
    return Eigen::MatrixXi(g.weights)(g.vocab.at(a), g.vocab.at(b));
}

double score_of(const std::vector<ScoredTerm>& scores, const std::string& term) {
    for (const auto& s : scores) {
        if (s.term == term) {
            return s.score;
        }
    }
    REQUIRE(false);
    return 0.0;
}

} // namespace

TEST_CASE("build_graph counts windowed position pairs once") {
    // Candidate sentences: [cute dog], [cute cat], [dog cat cute].
    const auto graph = sanity_graph();
    REQUIRE(graph.size() == 3);
    CHECK(weight_between(graph, "cute", "dog") == 2);
    CHECK(weight_between(graph, "cute", "cat") == 2);
    CHECK(weight_between(graph, "dog", "cat") == 1);

    const Eigen::MatrixXi dense(graph.weights);
    CHECK(dense == dense.transpose());
    CHECK(dense.diagonal().isZero());

    // First occurrences index into the full token stream (punctuation
    // tokens count).
    CHECK(graph.first_occurrence.at("cute") == 4);
    CHECK(graph.first_occurrence.at("dog") == 5);
    CHECK(graph.first_occurrence.at("cat") == 11);
}

TEST_CASE("build_graph: single candidate gives one node and no edges") {
    PipelineConfig config;
    const auto graph = build_graph(filter_tokens(tokenize("stabilometry"), config), 5);
    CHECK(graph.size() == 1);
    CHECK(graph.weights.nonZeros() == 0);
}

TEST_CASE("build_graph: window 2 links only adjacent candidates") {
    PipelineConfig config;
    const auto graph = build_graph(filter_tokens(tokenize("alpha bravo carbon"), config), 2);
    REQUIRE(graph.size() == 3);
    CHECK(weight_between(graph, "alpha", "bravo") == 1);
    CHECK(weight_between(graph, "bravo", "carbon") == 1);
    CHECK(weight_between(graph, "alpha", "carbon") == 0);
}

TEST_CASE("build_graph: no cross-sentence edges") {
    PipelineConfig config;
    const auto graph = build_graph(filter_tokens(tokenize("alpha bravo. carbon delta."), config), 5);
    CHECK(weight_between(graph, "alpha", "bravo") == 1);
    CHECK(weight_between(graph, "bravo", "carbon") == 0);
    CHECK(weight_between(graph, "alpha", "carbon") == 0);
}

TEST_CASE("build_graph rejects windows below 2") {
    PipelineConfig config;
    const auto candidates = filter_tokens(tokenize("alpha bravo"), config);
    CHECK_THROWS_AS(build_graph(candidates, 1), ConfigError);
}

TEST_CASE("stationary_scores matches the derived sanity values") {
    RankConfig config;
    const auto result = stationary_scores(sanity_graph(), config);
    REQUIRE(result.scores.size() == 3);
    CHECK(result.converged);
    CHECK(score_of(result.scores, "cute") == doctest::Approx(0.4).epsilon(1e-6));
    CHECK(score_of(result.scores, "dog") == doctest::Approx(0.3).epsilon(1e-6));
    CHECK(score_of(result.scores, "cat") == doctest::Approx(0.3).epsilon(1e-6));

    double total = 0.0;
    for (const auto& s : result.scores) {
        total += s.score;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("stationary_scores: single node scores 1") {
    PipelineConfig pconfig;
    const auto graph = build_graph(filter_tokens(tokenize("stabilometry"), pconfig), 5);
    RankConfig config;
    const auto result = stationary_scores(graph, config);
    REQUIRE(result.scores.size() == 1);
    CHECK(result.scores[0].score == doctest::Approx(1.0));
}

TEST_CASE("stationary_scores: damping 0 gives the uniform distribution") {
    RankConfig config;
    config.mode = RankMode::Damped;
    config.damping = 0.0;
    const auto result = stationary_scores(sanity_graph(), config);
    for (const auto& s : result.scores) {
        CHECK(s.score == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    }
}

TEST_CASE("stationary_scores: isolated nodes score zero in Pure mode") {
    // "zulu" shares no sentence with the pair, and a one-candidate sentence
    // has no edges.
    PipelineConfig pconfig;
    const auto graph =
        build_graph(filter_tokens(tokenize("alpha bravo. alpha bravo. zulu."), pconfig), 5);
    REQUIRE(graph.size() == 3);
    RankConfig config;
    const auto result = stationary_scores(graph, config);
    CHECK(score_of(result.scores, "zulu") == 0.0);
    CHECK(score_of(result.scores, "alpha") == doctest::Approx(0.5).epsilon(1e-6));
    double total = 0.0;
    for (const auto& s : result.scores) {
        total += s.score;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("stationary_scores: Damped mode keeps disconnected graphs well defined") {
    PipelineConfig pconfig;
    const auto graph =
        build_graph(filter_tokens(tokenize("alpha bravo. alpha bravo. zulu."), pconfig), 5);
    RankConfig config;
    config.mode = RankMode::Damped;
    const auto result = stationary_scores(graph, config);
    CHECK(score_of(result.scores, "zulu") > 0.0);
    double total = 0.0;
    for (const auto& s : result.scores) {
        total += s.score;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("stationary_scores flags non-convergence but still returns scores") {
    std::mt19937_64 rng(21);
    const auto weights = oracle::random_connected_graph(rng, 30, 5, 25);
    const auto graph = oracle::graph_from_dense(weights);
    RankConfig config;
    config.max_iterations = 1;
    config.tolerance = 1e-15;
    const auto result = stationary_scores(graph, config);
    CHECK_FALSE(result.converged);
    CHECK(result.scores.size() == 30);
    double total = 0.0;
    for (const auto& s : result.scores) {
        total += s.score;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("degree law: Pure-mode scores equal weighted degree fractions") {
    std::mt19937_64 rng(8);
    RankConfig config;
    config.tolerance = 1e-9;
    config.max_iterations = 5000; // slow-mixing samples need more than the default
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 29);
        const auto weights = oracle::random_connected_graph(rng, n, 5, n / 2);
        const auto graph = oracle::graph_from_dense(weights);
        const auto result = stationary_scores(graph, config);
        REQUIRE(result.converged);

        const auto by_degree = oracle::degree_scores(weights);
        const auto by_power = oracle::stationary_power(weights, 10000);
        for (int i = 0; i < n; ++i) {
            CHECK(result.scores[static_cast<std::size_t>(i)].score ==
                  doctest::Approx(by_degree[i]).epsilon(1e-6));
            CHECK(result.scores[static_cast<std::size_t>(i)].score ==
                  doctest::Approx(by_power[i]).epsilon(1e-6));
        }
    }
}

TEST_CASE("ranking is invariant under positive weight scaling") {
    std::mt19937_64 rng(13);
    const auto weights = oracle::random_connected_graph(rng, 12, 4, 6);
    RankConfig config;
    const auto base = rank_terms(stationary_scores(oracle::graph_from_dense(weights), config).scores,
                                 12);
    const Eigen::MatrixXi scaled_weights = weights * 7;
    const auto scaled =
        rank_terms(stationary_scores(oracle::graph_from_dense(scaled_weights), config).scores, 12);
    REQUIRE(base.size() == scaled.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(base[i].term == scaled[i].term);
    }
}

TEST_CASE("rank_terms orders by score then first occurrence") {
    std::vector<ScoredTerm> scores = {{"cat", 0.3, 10}, {"cute", 0.4, 4}, {"dog", 0.3, 5}};
    const auto ranked = rank_terms(scores, 10);
    REQUIRE(ranked.size() == 3);
    CHECK(ranked[0].term == "cute");
    CHECK(ranked[1].term == "dog"); // earlier first occurrence wins the tie
    CHECK(ranked[2].term == "cat");

    const auto top2 = rank_terms(scores, 2);
    REQUIRE(top2.size() == 2);
    CHECK(top2[1].term == "dog");

    CHECK_THROWS_AS(rank_terms(scores, 0), ConfigError);
}

TEST_CASE("rank_terms treats sub-1e-9 differences as ties") {
    std::vector<ScoredTerm> scores = {{"later", 0.3 + 2e-13, 9}, {"early", 0.3, 2}};
    const auto ranked = rank_terms(scores, 2);
    CHECK(ranked[0].term == "early");
}

TEST_CASE("agglomerate_phrases bridges stopwords inside a phrase") {
    const auto tt = tokenize("Officials at the Department of Health said so.");
    PipelineConfig config;
    config.bridge_stopwords_max = 2;
    const std::vector<ScoredTerm> ranked = {{"department", 0.5, 3}, {"health", 0.4, 5}};
    const auto phrases = agglomerate_phrases(ranked, tt, config);
    REQUIRE(phrases.size() == 1);
    CHECK(phrases[0].text == "Department of Health");
    CHECK(phrases[0].score == doctest::Approx(0.45));
    CHECK(phrases[0].member_terms == std::vector<std::string>{"department", "health"});
}

TEST_CASE("agglomerate_phrases merges adjacent ranked tokens") {
    const auto tt = tokenize("There is a cute dog here.");
    PipelineConfig config;
    const std::vector<ScoredTerm> ranked = {{"cute", 0.4, 3}, {"dog", 0.3, 4}};
    const auto phrases = agglomerate_phrases(ranked, tt, config);
    REQUIRE(phrases.size() == 1);
    CHECK(phrases[0].text == "cute dog");
    CHECK(phrases[0].score == doctest::Approx(0.35));
}

TEST_CASE("agglomerate_phrases without bridging keeps separated terms separate") {
    const auto tt = tokenize("The cute and calm dog.");
    PipelineConfig config; // bridge_stopwords_max = 0
    const std::vector<ScoredTerm> ranked = {{"cute", 0.4, 1}, {"dog", 0.3, 4}};
    const auto phrases = agglomerate_phrases(ranked, tt, config);
    REQUIRE(phrases.size() == 2);
    CHECK(phrases[0].text == "cute");
    CHECK(phrases[1].text == "dog");
}

TEST_CASE("agglomerate_phrases does not bridge across non-stopwords or sentences") {
    PipelineConfig config;
    config.bridge_stopwords_max = 3;
    const std::vector<ScoredTerm> ranked = {{"alpha", 0.5, 0}, {"bravo", 0.4, 0}};

    const auto crossing = tokenize("alpha. bravo");
    CHECK(agglomerate_phrases(ranked, crossing, config).size() == 2);

    const auto blocked = tokenize("alpha zulu bravo");
    CHECK(agglomerate_phrases(ranked, blocked, config).size() == 2);
}

TEST_CASE("agglomerate_phrases deduplicates case-folded phrase texts") {
    const auto tt = tokenize("Cute Dog meets cute dog.");
    PipelineConfig config;
    const std::vector<ScoredTerm> ranked = {{"cute", 0.4, 0}, {"dog", 0.3, 1}};
    const auto phrases = agglomerate_phrases(ranked, tt, config);
    REQUIRE(phrases.size() == 1);
    CHECK(phrases[0].text == "Cute Dog"); // equal scores keep the earliest run
}

TEST_CASE("phrase soundness: every phrase text is a verbatim source substring") {
    const auto fixture = kex::synthetic::make_corpus({40, 5, 77});
    std::istringstream in(fixture.csv);
    const auto corpus = parse_corpus(in);
    PipelineConfig pipeline;
    pipeline.agglomerate = true;
    pipeline.bridge_stopwords_max = 2;
    RankConfig rank;
    for (const auto& rec : corpus.records) {
        const auto tt = tokenize(rec.abstract);
        const auto candidates = filter_tokens(tt, pipeline);
        const auto graph = build_graph(candidates, rank.window);
        if (graph.size() == 0) {
            continue;
        }
        const Eigen::MatrixXi dense(graph.weights);
        CHECK(dense == dense.transpose());
        CHECK(dense.diagonal().isZero());
        const auto ranked = rank_terms(stationary_scores(graph, rank).scores, rank.top_k);
        for (const auto& phrase : agglomerate_phrases(ranked, tt, pipeline)) {
            CHECK(rec.abstract.find(phrase.text) != std::string::npos);
        }
    }
}

TEST_CASE("extract_keywords yields cute, dog, cat on the sanity text") {
    PipelineConfig pipeline;
    RankConfig rank;
    const auto phrases = extract_keywords(kSanityText, pipeline, rank);
    REQUIRE(phrases.size() == 3);
    CHECK(phrases[0].text == "cute");
    CHECK(phrases[1].text == "dog");
    CHECK(phrases[2].text == "cat");
    CHECK(phrases[0].score == doctest::Approx(0.4).epsilon(1e-6));
    // Single-word phrases by default.
    for (const auto& p : phrases) {
        CHECK(p.member_terms.size() == 1);
    }
}

TEST_CASE("extract_keywords with agglomeration forms multiword phrases") {
    PipelineConfig pipeline;
    pipeline.agglomerate = true;
    pipeline.bridge_stopwords_max = 2;
    RankConfig rank;
    rank.top_k = 2; // department and health carry the highest degree
    const auto phrases = extract_keywords(
        "The Department of Health published guidance. The Department of Health reviewed results.",
        pipeline, rank);
    bool found = false;
    for (const auto& p : phrases) {
        if (p.text == "Department of Health") {
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("extract_keywords handles degenerate inputs") {
    PipelineConfig pipeline;
    RankConfig rank;
    CHECK(extract_keywords("", pipeline, rank).empty());
    CHECK(extract_keywords("it is what it is", pipeline, rank).empty());
    CHECK(extract_keywords("...!!!", pipeline, rank).empty());
}

TEST_CASE("extract_keywords is deterministic") {
    PipelineConfig pipeline;
    pipeline.normalizer = Normalizer::LightStem;
    RankConfig rank;
    const auto fixture = kex::synthetic::make_corpus({10, 3, 5});
    std::istringstream in(fixture.csv);
    const auto corpus = parse_corpus(in);
    for (const auto& rec : corpus.records) {
        const auto a = extract_keywords(rec.abstract, pipeline, rank);
        const auto b = extract_keywords(rec.abstract, pipeline, rank);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].text == b[i].text);
            CHECK(a[i].score == b[i].score);
        }
    }
}
