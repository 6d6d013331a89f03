#include "kex/textrank.hpp"

#include "kex/errors.hpp"
#include "kex/linalg.hpp"
#include "kex/strutil.hpp"

#include <algorithm>
#include <cmath>

namespace kex {

namespace {

// Quantized comparison key; scores within 1e-9 are treated as tied.
long long score_key(double score) {
    return std::llround(score * 1e9);
}

bool ranks_before(long long key_a, int occ_a, const std::string& term_a, long long key_b, int occ_b,
                  const std::string& term_b) {
    if (key_a != key_b) {
        return key_a > key_b;
    }
    if (occ_a != occ_b) {
        return occ_a < occ_b;
    }
    return term_a < term_b;
}

} // namespace

CooccurrenceGraph build_graph(const TokenizedText& candidates, int window) {
    if (window < 2) {
        throw ConfigError("co-occurrence window must be at least 2");
    }
    CooccurrenceGraph graph;
    std::vector<int> node_ids;
    node_ids.reserve(candidates.tokens.size());
    for (const Token& token : candidates.tokens) {
        auto [it, inserted] = graph.vocab.emplace(token.normalized, graph.size());
        if (inserted) {
            graph.terms.push_back(token.normalized);
            graph.first_occurrence.emplace(token.normalized, token.token_index);
        }
        node_ids.push_back(it->second);
    }

    const int n = graph.size();
    std::vector<Eigen::Triplet<int>> triplets;
    std::size_t start = 0;
    while (start < candidates.tokens.size()) {
        std::size_t end = start;
        const int sentence = candidates.tokens[start].sentence_index;
        while (end < candidates.tokens.size() && candidates.tokens[end].sentence_index == sentence) {
            ++end;
        }
        for (std::size_t i = start; i < end; ++i) {
            const std::size_t limit = std::min(end, i + static_cast<std::size_t>(window));
            for (std::size_t j = i + 1; j < limit; ++j) {
                const int a = node_ids[i];
                const int b = node_ids[j];
                if (a != b) {
                    triplets.emplace_back(a, b, 1);
                    triplets.emplace_back(b, a, 1);
                }
            }
        }
        start = end;
    }
    graph.weights.resize(n, n);
    graph.weights.setFromTriplets(triplets.begin(), triplets.end());
    return graph;
}

RankResult stationary_scores(const CooccurrenceGraph& graph, const RankConfig& config) {
    RankResult result;
    const int n = graph.size();
    if (n == 0) {
        result.converged = true;
        return result;
    }

    const Eigen::SparseMatrix<double> weights = graph.weights.cast<double>();
    Eigen::VectorXd strength = Eigen::VectorXd::Zero(n);
    for (int col = 0; col < weights.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(weights, col); it; ++it) {
            strength[it.row()] += it.value();
        }
    }

    Eigen::VectorXd scores;
    if (config.mode == RankMode::Pure) {
        if (strength.sum() == 0.0) {
            // No edges: no walk to follow, fall back to the uniform vector.
            scores = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
            result.converged = true;
        } else {
            const auto transition = row_stochastic(graph.weights);
            auto pi = stationary_power_iteration(transition, config.tolerance, config.max_iterations);
            scores = std::move(pi.distribution);
            for (int i = 0; i < n; ++i) {
                if (strength[i] == 0.0) {
                    scores[i] = 0.0;
                }
            }
            const double total = scores.sum();
            if (total > 0.0) {
                scores /= total;
            }
            result.converged = pi.converged;
            result.iterations = pi.iterations;
        }
    } else {
        const auto transition = row_stochastic(graph.weights);
        auto pi = damped_power_iteration(transition, config.damping, config.tolerance,
                                         config.max_iterations);
        scores = std::move(pi.distribution);
        const double total = scores.sum();
        if (total > 0.0) {
            scores /= total;
        }
        result.converged = pi.converged;
        result.iterations = pi.iterations;
    }

    result.scores.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        result.scores.push_back(
            {graph.terms[static_cast<std::size_t>(i)], scores[i],
             graph.first_occurrence.at(graph.terms[static_cast<std::size_t>(i)])});
    }
    return result;
}

std::vector<ScoredTerm> rank_terms(std::vector<ScoredTerm> scores, int top_k) {
    if (top_k < 1) {
        throw ConfigError("top_k must be at least 1");
    }
    std::sort(scores.begin(), scores.end(), [](const ScoredTerm& a, const ScoredTerm& b) {
        return ranks_before(score_key(a.score), a.first_occurrence, a.term, score_key(b.score),
                            b.first_occurrence, b.term);
    });
    if (scores.size() > static_cast<std::size_t>(top_k)) {
        scores.resize(static_cast<std::size_t>(top_k));
    }
    return scores;
}

std::vector<Keyphrase> agglomerate_phrases(std::span<const ScoredTerm> ranked,
                                           const TokenizedText& tt, const PipelineConfig& config) {
    std::unordered_map<std::string, double> score_of;
    for (const auto& s : ranked) {
        score_of.emplace(s.term, s.score);
    }

    const auto is_ranked = [&](const Token& token, std::string& normalized_out) {
        if (token.is_punct) {
            return false;
        }
        normalized_out = normalize_token(token.surface, config);
        return score_of.find(normalized_out) != score_of.end();
    };

    std::vector<Keyphrase> phrases;
    const auto& tokens = tt.tokens;
    std::size_t i = 0;
    std::string normalized;
    while (i < tokens.size()) {
        if (!is_ranked(tokens[i], normalized)) {
            ++i;
            continue;
        }
        // Start of a run; extend over ranked tokens, bridging short
        // stopword gaps within the same sentence.
        std::vector<std::string> members{normalized};
        double score_sum = score_of.at(normalized);
        std::size_t last_ranked = i;
        std::size_t j = i + 1;
        int pending_stopwords = 0;
        while (j < tokens.size() && tokens[j].sentence_index == tokens[i].sentence_index &&
               !tokens[j].is_punct) {
            if (is_ranked(tokens[j], normalized)) {
                members.push_back(normalized);
                score_sum += score_of.at(normalized);
                last_ranked = j;
                pending_stopwords = 0;
                ++j;
            } else if (config.stopwords && config.stopwords->contains(tokens[j].surface) &&
                       pending_stopwords < config.bridge_stopwords_max) {
                ++pending_stopwords;
                ++j;
            } else {
                break;
            }
        }

        Keyphrase phrase;
        const std::size_t begin = tokens[i].begin;
        const std::size_t end = tokens[last_ranked].end;
        phrase.text = tt.source.substr(begin, end - begin);
        phrase.score = score_sum / static_cast<double>(members.size());
        phrase.member_terms = std::move(members);
        phrase.first_token_index = tokens[i].token_index;
        phrases.push_back(std::move(phrase));
        i = last_ranked + 1;
    }

    // Case-folded dedup keeping the highest score (earliest occurrence on
    // score ties).
    std::unordered_map<std::string, std::size_t> best_of;
    std::vector<Keyphrase> unique;
    for (auto& phrase : phrases) {
        const std::string key = to_lower(phrase.text);
        auto it = best_of.find(key);
        if (it == best_of.end()) {
            best_of.emplace(key, unique.size());
            unique.push_back(std::move(phrase));
        } else {
            Keyphrase& kept = unique[it->second];
            const auto key_new = score_key(phrase.score);
            const auto key_old = score_key(kept.score);
            if (key_new > key_old ||
                (key_new == key_old && phrase.first_token_index < kept.first_token_index)) {
                kept = std::move(phrase);
            }
        }
    }

    std::sort(unique.begin(), unique.end(), [](const Keyphrase& a, const Keyphrase& b) {
        return ranks_before(score_key(a.score), a.first_token_index, a.text, score_key(b.score),
                            b.first_token_index, b.text);
    });
    return unique;
}

std::vector<Keyphrase> extract_keywords(std::string_view text, const PipelineConfig& pipeline,
                                        const RankConfig& rank) {
    TokenizerOptions tokenizer_options;
    tokenizer_options.split_inner_punct = pipeline.split_inner_punct;
    const TokenizedText tt = tokenize(text, tokenizer_options);
    const TokenizedText candidates = filter_tokens(tt, pipeline);
    const CooccurrenceGraph graph = build_graph(candidates, rank.window);
    if (graph.size() == 0) {
        return {};
    }
    const RankResult scored = stationary_scores(graph, rank);
    const std::vector<ScoredTerm> ranked = rank_terms(scored.scores, rank.top_k);
    if (pipeline.agglomerate) {
        return agglomerate_phrases(ranked, tt, pipeline);
    }
    std::vector<Keyphrase> phrases;
    phrases.reserve(ranked.size());
    for (const auto& term : ranked) {
        const Token& at_first = tt.tokens[static_cast<std::size_t>(term.first_occurrence)];
        Keyphrase phrase;
        phrase.text = at_first.surface;
        phrase.score = term.score;
        phrase.member_terms = {term.term};
        phrase.first_token_index = term.first_occurrence;
        phrases.push_back(std::move(phrase));
    }
    return phrases;
}

} // namespace kex
