#ifndef KEX_EVALUATION_HPP
#define KEX_EVALUATION_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kex {

struct MatchConfig {
    double threshold = 0.8;
    bool case_fold = true;
};

// Unit-cost Levenshtein distance over bytes.
std::size_t edit_distance(std::string_view a, std::string_view b);

// 1 - distance / max(|a|, |b|). Both empty -> 1, one empty -> 0.
double similarity(std::string_view a, std::string_view b, bool case_fold = true);

struct MatchPair {
    std::size_t candidate_index = 0;
    std::size_t reference_index = 0;
    std::string candidate;
    std::string reference;
    double sim = 0.0;
};

struct MatchResult {
    std::vector<MatchPair> pairs;
    std::vector<std::string> unmatched_candidates;
    std::vector<std::string> unmatched_references;
    std::size_t n_candidates = 0;
    std::size_t n_references = 0;
};

// Greedy one-to-one matching: pairs at or above the threshold are taken in
// (similarity desc, candidate index asc, reference index asc) order, each
// endpoint used at most once.
MatchResult match_lists(std::span<const std::string> candidates,
                        std::span<const std::string> references, const MatchConfig& config);

struct InstanceScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    long n_candidates = 0;
    long n_references = 0;
    long n_matched = 0;
};

InstanceScore score_instance(const MatchResult& m);

// Shared convention: both sides empty -> all metrics 1; an empty side
// otherwise zeroes the corresponding metric; f1 is 0 when p + r == 0.
InstanceScore score_from_counts(long n_matched, long n_candidates, long n_references);

struct EvalReport {
    std::vector<InstanceScore> per_instance;
    InstanceScore micro; // from summed counts
    InstanceScore macro; // unweighted mean of per-instance metrics
};

EvalReport aggregate(std::span<const InstanceScore> scores);

// Cluster-based protocol: each cluster is one instance, its extracted
// phrases matched against the cluster's expanded reference list. Note that
// expanded lists inflate the recall denominator.
EvalReport evaluate_cluster(const std::map<int, std::vector<std::string>>& candidates_by_cluster,
                            const std::map<int, std::vector<std::string>>& references_by_cluster,
                            const MatchConfig& config);

} // namespace kex

#endif // KEX_EVALUATION_HPP
