#ifndef KEX_TEXTRANK_HPP
#define KEX_TEXTRANK_HPP

#include "kex/textproc.hpp"

#include <Eigen/SparseCore>

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace kex {

// Windowed co-occurrence graph over normalized candidate terms. The weight
// matrix is symmetric with a zero diagonal; entries count position pairs.
struct CooccurrenceGraph {
    std::unordered_map<std::string, int> vocab; // normalized term -> node index
    std::vector<std::string> terms;             // node index -> normalized term
    Eigen::SparseMatrix<int> weights;
    std::unordered_map<std::string, int> first_occurrence; // term -> smallest token_index

    int size() const { return static_cast<int>(terms.size()); }
};

enum class RankMode { Pure, Damped };

struct RankConfig {
    int window = 5;
    RankMode mode = RankMode::Pure;
    double damping = 0.85; // Damped mode only
    double tolerance = 1e-6;
    int max_iterations = 100;
    int top_k = 10;
};

struct ScoredTerm {
    std::string term;
    double score = 0.0;
    int first_occurrence = 0;
};

struct RankResult {
    std::vector<ScoredTerm> scores; // vocab order
    bool converged = false;
    int iterations = 0;
};

struct Keyphrase {
    std::string text; // verbatim source substring
    double score = 0.0;
    std::vector<std::string> member_terms;
    int first_token_index = 0;
};

// Counts each unordered pair of candidate token positions at distance less
// than `window` (within one sentence) exactly once, regardless of how many
// sliding windows cover it.
CooccurrenceGraph build_graph(const TokenizedText& candidates, int window);

// Pure mode: random-walk stationary distribution of the row-normalized
// weight matrix; for a connected graph this equals weighted degree over
// total weighted degree. Isolated nodes score 0 and the rest renormalize to
// sum 1 (an edgeless graph falls back to uniform). Damped mode mixes in a
// uniform restart, which keeps disconnected graphs well defined.
RankResult stationary_scores(const CooccurrenceGraph& graph, const RankConfig& config);

// Sorts by score descending, breaking ties by first occurrence and then
// lexicographically, and truncates to top_k. Scores are compared after
// quantization to 1e-9 so floating-point noise cannot reorder true ties.
std::vector<ScoredTerm> rank_terms(std::vector<ScoredTerm> scores, int top_k);

// Merges maximal runs of ranked tokens in the unfiltered tokenization into
// phrases, allowing up to bridge_stopwords_max consecutive interior
// stopwords between ranked tokens. Phrase score is the mean of the member
// term scores; duplicate texts (case-folded) keep the highest score.
std::vector<Keyphrase> agglomerate_phrases(std::span<const ScoredTerm> ranked,
                                           const TokenizedText& tt, const PipelineConfig& config);

// Full single-document pipeline: tokenize, filter, build graph, score, rank,
// and form phrases. With pipeline.agglomerate unset each ranked term becomes
// a single-word phrase (its surface at first occurrence).
std::vector<Keyphrase> extract_keywords(std::string_view text, const PipelineConfig& pipeline,
                                        const RankConfig& rank);

} // namespace kex

#endif // KEX_TEXTRANK_HPP
