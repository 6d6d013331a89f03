#include "kex/nermatch.hpp"

#include "kex/errors.hpp"
#include "kex/strutil.hpp"
#include "kex/textproc.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace kex {

namespace {

ModelManifest manifest_from_json(const nlohmann::json& j, std::string_view source_name) {
    if (!j.is_object() || !j.contains("model_id") || !j.contains("labels")) {
        throw ParseError(std::string(source_name) +
                         ": manifest entries need \"model_id\" and \"labels\"");
    }
    ModelManifest m;
    m.model_id = j.at("model_id").get<std::string>();
    for (const auto& label : j.at("labels")) {
        m.labels.insert(label.get<std::string>());
    }
    if (m.labels.empty()) {
        throw ParseError(std::string(source_name) + ": manifest \"" + m.model_id +
                         "\" has an empty label set");
    }
    return m;
}

} // namespace

std::vector<ModelManifest> parse_manifests(std::string_view json_text, std::string_view source_name) {
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string(source_name) + ": invalid manifest JSON: " + e.what());
    }
    std::vector<ModelManifest> manifests;
    if (parsed.is_array()) {
        for (const auto& item : parsed) {
            manifests.push_back(manifest_from_json(item, source_name));
        }
    } else {
        manifests.push_back(manifest_from_json(parsed, source_name));
    }
    return manifests;
}

std::vector<ModelManifest> load_manifests_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open manifest file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_manifests(buffer.str(), path);
}

std::vector<NerAnnotation> load_annotations(std::istream& in,
                                            std::span<const ModelManifest> manifests,
                                            std::string_view source_name) {
    std::unordered_map<std::string, const ModelManifest*> manifest_of;
    for (const auto& m : manifests) {
        manifest_of.emplace(m.model_id, &m);
    }

    std::vector<NerAnnotation> annotations;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split(line, '\t');
        if (fields.size() != 4) {
            std::ostringstream msg;
            msg << source_name << ": row " << row << ": expected 4 tab-separated fields, got "
                << fields.size();
            throw ParseError(msg.str());
        }
        NerAnnotation a;
        const auto id_field = trim(fields[0]);
        const auto [ptr, ec] = std::from_chars(id_field.data(), id_field.data() + id_field.size(), a.doc_id);
        if (ec != std::errc() || ptr != id_field.data() + id_field.size() || id_field.empty()) {
            std::ostringstream msg;
            msg << source_name << ": row " << row << ": invalid doc_id \"" << id_field << "\"";
            throw ParseError(msg.str());
        }
        a.surface = std::string(trim(fields[1]));
        a.label = std::string(trim(fields[2]));
        a.model_id = std::string(trim(fields[3]));

        const auto it = manifest_of.find(a.model_id);
        if (it == manifest_of.end()) {
            std::ostringstream msg;
            msg << source_name << ": row " << row << ": unknown model_id \"" << a.model_id << "\"";
            throw ParseError(msg.str());
        }
        if (it->second->labels.count(a.label) == 0) {
            std::ostringstream msg;
            msg << source_name << ": row " << row << ": label \"" << a.label
                << "\" not in the label set of model \"" << a.model_id << "\"";
            throw ParseError(msg.str());
        }
        annotations.push_back(std::move(a));
    }
    return annotations;
}

std::vector<NerAnnotation> load_annotations_file(const std::string& path,
                                                 std::span<const ModelManifest> manifests) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open annotation file: " + path);
    }
    return load_annotations(in, manifests, path);
}

namespace {

std::size_t word_count(std::string_view phrase) {
    std::size_t n = 0;
    for (const auto part : split(phrase, ' ')) {
        if (!trim(part).empty()) {
            ++n;
        }
    }
    return n;
}

// Non-punctuation token surfaces of the abstract, in order.
std::vector<std::string> abstract_words(const std::string& abstract) {
    std::vector<std::string> words;
    for (const auto& token : tokenize(abstract).tokens) {
        if (!token.is_punct) {
            words.push_back(token.surface);
        }
    }
    return words;
}

double best_window_similarity(std::string_view keyword, const std::vector<std::string>& words,
                              bool case_fold) {
    const std::size_t kw_words = word_count(keyword);
    if (kw_words == 0 || words.empty()) {
        return 0.0;
    }
    double best = 0.0;
    const std::size_t lo = kw_words > 1 ? kw_words - 1 : 1;
    const std::size_t hi = kw_words + 1;
    for (std::size_t size = lo; size <= hi; ++size) {
        if (size > words.size()) {
            break;
        }
        for (std::size_t i = 0; i + size <= words.size(); ++i) {
            std::string window = words[i];
            for (std::size_t j = 1; j < size; ++j) {
                window += ' ';
                window += words[i + j];
            }
            best = std::max(best, similarity(keyword, window, case_fold));
            if (best == 1.0) {
                return best;
            }
        }
    }
    return best;
}

} // namespace

std::vector<PresenceRow> keyword_presence(const Corpus& corpus,
                                          std::span<const NerAnnotation> annotations,
                                          const MatchConfig& config) {
    std::set<std::string> model_ids;
    std::unordered_map<int, std::unordered_map<std::string, std::vector<const NerAnnotation*>>>
        by_doc_model;
    for (const auto& a : annotations) {
        model_ids.insert(a.model_id);
        by_doc_model[a.doc_id][a.model_id].push_back(&a);
    }

    std::vector<PresenceRow> rows;
    for (const auto& rec : corpus.records) {
        const auto keywords = parse_keyword_list(rec.raw_keywords);
        if (keywords.empty()) {
            continue;
        }
        const auto words = abstract_words(rec.abstract);
        const auto doc_it = by_doc_model.find(rec.doc_id);
        for (const auto& keyword : keywords) {
            PresenceRow row;
            row.doc_id = rec.doc_id;
            row.keyword = keyword;
            row.best_abstract_similarity = best_window_similarity(keyword, words, config.case_fold);
            row.in_abstract = row.best_abstract_similarity >= config.threshold;
            for (const auto& model : model_ids) {
                bool found = false;
                if (doc_it != by_doc_model.end()) {
                    const auto model_it = doc_it->second.find(model);
                    if (model_it != doc_it->second.end()) {
                        for (const auto* a : model_it->second) {
                            if (similarity(keyword, a->surface, config.case_fold) >= config.threshold) {
                                found = true;
                                break;
                            }
                        }
                    }
                }
                row.found_by.emplace(model, found);
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

EvalReport evaluate_ner_as_keywords(const Corpus& corpus,
                                    std::span<const NerAnnotation> annotations,
                                    const std::string& model_id, const MatchConfig& config) {
    bool model_seen = false;
    std::unordered_map<int, std::vector<std::string>> candidates_by_doc;
    for (const auto& a : annotations) {
        if (a.model_id != model_id) {
            continue;
        }
        model_seen = true;
        auto& list = candidates_by_doc[a.doc_id];
        if (std::find(list.begin(), list.end(), a.surface) == list.end()) {
            list.push_back(a.surface);
        }
    }
    if (!model_seen) {
        throw ConfigError("no annotations for model \"" + model_id + "\"");
    }

    std::vector<InstanceScore> scores;
    scores.reserve(corpus.records.size());
    const std::vector<std::string> empty;
    for (const auto& rec : corpus.records) {
        const auto references = parse_keyword_list(rec.raw_keywords);
        const auto it = candidates_by_doc.find(rec.doc_id);
        const auto& candidates = it != candidates_by_doc.end() ? it->second : empty;
        scores.push_back(score_instance(match_lists(candidates, references, config)));
    }
    return aggregate(scores);
}

} // namespace kex
