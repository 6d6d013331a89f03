#ifndef KEX_NERMATCH_HPP
#define KEX_NERMATCH_HPP

#include "kex/corpus.hpp"
#include "kex/evaluation.hpp"

#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kex {

struct NerAnnotation {
    int doc_id = 0;
    std::string surface;
    std::string label;
    std::string model_id;
};

struct ModelManifest {
    std::string model_id;
    std::set<std::string> labels;
};

// Manifest JSON: either one {"model_id": ..., "labels": [...]} object or an
// array of them.
std::vector<ModelManifest> parse_manifests(std::string_view json_text,
                                           std::string_view source_name = "<stream>");
std::vector<ModelManifest> load_manifests_file(const std::string& path);

// Annotation TSV: doc_id, surface, label, model_id. Every row's model must
// appear in the manifests and its label must belong to that model's set.
std::vector<NerAnnotation> load_annotations(std::istream& in,
                                            std::span<const ModelManifest> manifests,
                                            std::string_view source_name = "<stream>");
std::vector<NerAnnotation> load_annotations_file(const std::string& path,
                                                 std::span<const ModelManifest> manifests);

struct PresenceRow {
    int doc_id = 0;
    std::string keyword;
    bool in_abstract = false;
    double best_abstract_similarity = 0.0;
    std::map<std::string, bool> found_by; // model_id -> found
};

// For every (document, reference keyword) pair: in_abstract is decided by
// the best similarity between the keyword and any word-aligned abstract
// window whose word count is within one of the keyword's, and found_by[m]
// is set when any of model m's surfaces for the document reaches the
// threshold. A threshold of 1.0 reduces to exact (case-folded) matching.
std::vector<PresenceRow> keyword_presence(const Corpus& corpus,
                                          std::span<const NerAnnotation> annotations,
                                          const MatchConfig& config);

// Treats one model's deduplicated surfaces per document as the candidate
// keyword list and scores them against the reference keywords.
EvalReport evaluate_ner_as_keywords(const Corpus& corpus,
                                    std::span<const NerAnnotation> annotations,
                                    const std::string& model_id, const MatchConfig& config);

} // namespace kex

#endif // KEX_NERMATCH_HPP
