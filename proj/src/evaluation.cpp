#include "kex/evaluation.hpp"

#include "kex/errors.hpp"
#include "kex/strutil.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace kex {

std::size_t edit_distance(std::string_view a, std::string_view b) {
    if (a.size() > b.size()) {
        std::swap(a, b);
    }
    std::vector<std::size_t> row(a.size() + 1);
    std::iota(row.begin(), row.end(), std::size_t{0});
    for (std::size_t j = 1; j <= b.size(); ++j) {
        std::size_t diagonal = row[0];
        row[0] = j;
        for (std::size_t i = 1; i <= a.size(); ++i) {
            const std::size_t saved = row[i];
            if (a[i - 1] == b[j - 1]) {
                row[i] = diagonal;
            } else {
                row[i] = std::min({row[i - 1], row[i], diagonal}) + 1;
            }
            diagonal = saved;
        }
    }
    return row[a.size()];
}

double similarity(std::string_view a, std::string_view b, bool case_fold) {
    if (a.empty() && b.empty()) {
        return 1.0;
    }
    if (a.empty() || b.empty()) {
        return 0.0;
    }
    std::size_t dist;
    if (case_fold) {
        dist = edit_distance(to_lower(a), to_lower(b));
    } else {
        dist = edit_distance(a, b);
    }
    const auto longer = static_cast<double>(std::max(a.size(), b.size()));
    return 1.0 - static_cast<double>(dist) / longer;
}

MatchResult match_lists(std::span<const std::string> candidates,
                        std::span<const std::string> references, const MatchConfig& config) {
    MatchResult result;
    result.n_candidates = candidates.size();
    result.n_references = references.size();

    std::vector<MatchPair> admissible;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        for (std::size_t r = 0; r < references.size(); ++r) {
            const double sim = similarity(candidates[c], references[r], config.case_fold);
            if (sim >= config.threshold) {
                admissible.push_back({c, r, candidates[c], references[r], sim});
            }
        }
    }
    std::stable_sort(admissible.begin(), admissible.end(), [](const MatchPair& a, const MatchPair& b) {
        if (a.sim != b.sim) {
            return a.sim > b.sim;
        }
        if (a.candidate_index != b.candidate_index) {
            return a.candidate_index < b.candidate_index;
        }
        return a.reference_index < b.reference_index;
    });

    std::vector<bool> candidate_used(candidates.size(), false);
    std::vector<bool> reference_used(references.size(), false);
    for (auto& pair : admissible) {
        if (!candidate_used[pair.candidate_index] && !reference_used[pair.reference_index]) {
            candidate_used[pair.candidate_index] = true;
            reference_used[pair.reference_index] = true;
            result.pairs.push_back(std::move(pair));
        }
    }
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (!candidate_used[c]) {
            result.unmatched_candidates.push_back(candidates[c]);
        }
    }
    for (std::size_t r = 0; r < references.size(); ++r) {
        if (!reference_used[r]) {
            result.unmatched_references.push_back(references[r]);
        }
    }
    return result;
}

InstanceScore score_from_counts(long n_matched, long n_candidates, long n_references) {
    InstanceScore s;
    s.n_matched = n_matched;
    s.n_candidates = n_candidates;
    s.n_references = n_references;
    if (n_candidates == 0 && n_references == 0) {
        s.precision = s.recall = s.f1 = 1.0;
        return s;
    }
    s.precision = n_candidates > 0 ? static_cast<double>(n_matched) / static_cast<double>(n_candidates) : 0.0;
    s.recall = n_references > 0 ? static_cast<double>(n_matched) / static_cast<double>(n_references) : 0.0;
    const double pr = s.precision + s.recall;
    s.f1 = pr > 0.0 ? 2.0 * s.precision * s.recall / pr : 0.0;
    return s;
}

InstanceScore score_instance(const MatchResult& m) {
    return score_from_counts(static_cast<long>(m.pairs.size()), static_cast<long>(m.n_candidates),
                             static_cast<long>(m.n_references));
}

EvalReport aggregate(std::span<const InstanceScore> scores) {
    if (scores.empty()) {
        throw ConfigError("aggregate requires at least one instance score");
    }
    EvalReport report;
    report.per_instance.assign(scores.begin(), scores.end());

    long matched = 0;
    long candidates = 0;
    long references = 0;
    double p_sum = 0.0;
    double r_sum = 0.0;
    double f_sum = 0.0;
    for (const auto& s : scores) {
        matched += s.n_matched;
        candidates += s.n_candidates;
        references += s.n_references;
        p_sum += s.precision;
        r_sum += s.recall;
        f_sum += s.f1;
    }
    report.micro = score_from_counts(matched, candidates, references);

    const auto n = static_cast<double>(scores.size());
    report.macro.precision = p_sum / n;
    report.macro.recall = r_sum / n;
    report.macro.f1 = f_sum / n;
    report.macro.n_matched = matched;
    report.macro.n_candidates = candidates;
    report.macro.n_references = references;
    return report;
}

EvalReport evaluate_cluster(const std::map<int, std::vector<std::string>>& candidates_by_cluster,
                            const std::map<int, std::vector<std::string>>& references_by_cluster,
                            const MatchConfig& config) {
    for (const auto& [cluster, unused] : candidates_by_cluster) {
        if (references_by_cluster.find(cluster) == references_by_cluster.end()) {
            std::ostringstream msg;
            msg << "cluster " << cluster << " has candidates but no reference list";
            throw ConfigError(msg.str());
        }
    }
    for (const auto& [cluster, unused] : references_by_cluster) {
        if (candidates_by_cluster.find(cluster) == candidates_by_cluster.end()) {
            std::ostringstream msg;
            msg << "cluster " << cluster << " has a reference list but no candidates";
            throw ConfigError(msg.str());
        }
    }
    std::vector<InstanceScore> scores;
    scores.reserve(candidates_by_cluster.size());
    for (const auto& [cluster, candidates] : candidates_by_cluster) {
        const auto& references = references_by_cluster.at(cluster);
        scores.push_back(score_instance(match_lists(candidates, references, config)));
    }
    return aggregate(scores);
}

} // namespace kex
