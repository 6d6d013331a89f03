#include "kex/cli.hpp"

#include "kex/clustering.hpp"
#include "kex/corpus.hpp"
#include "kex/errors.hpp"
#include "kex/evaluation.hpp"
#include "kex/nermatch.hpp"
#include "kex/records.hpp"
#include "kex/strutil.hpp"
#include "kex/textrank.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace kex {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitUsageError = 2;

struct PipelineFlags {
    bool lowercase = true;
    bool remove_numbers = true;
    int min_token_len = 3;
    bool nouns_only = false;
    std::string normalizer = "identity";
    std::string stopword_file;
    bool agglomerate = false;
    int bridge_stopwords_max = 0;
    bool split_inner_punct = false;
};

struct RankFlags {
    int window = 5;
    std::string mode = "pure";
    double damping = 0.85;
    double tolerance = 1e-6;
    int max_iterations = 100;
    int top_k = 10;
};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& flags) {
    cmd->add_flag("--lowercase,!--no-lowercase", flags.lowercase, "Lowercase text (default on)");
    cmd->add_flag("--remove-numbers,!--keep-numbers", flags.remove_numbers,
                  "Drop numeric tokens (default on)");
    cmd->add_option("--min-token-len", flags.min_token_len,
                    "Minimum candidate token length in characters")
        ->capture_default_str();
    cmd->add_flag("--nouns-only", flags.nouns_only, "Keep only noun-like candidate tokens");
    cmd->add_option("--normalizer", flags.normalizer, "Token normalizer: identity or lightstem")
        ->capture_default_str();
    cmd->add_option("--stopwords", flags.stopword_file,
                    "Custom stopword file (one word per line, # comments)");
    cmd->add_flag("--agglomerate", flags.agglomerate,
                  "Merge adjacent ranked keywords into keyphrases");
    cmd->add_option("--bridge-stopwords", flags.bridge_stopwords_max,
                    "Interior stopwords allowed inside a phrase (implies --agglomerate)")
        ->capture_default_str();
    cmd->add_flag("--split-inner-punct", flags.split_inner_punct,
                  "Split tokens at interior punctuation as well");
}

void add_corpus_flags(CLI::App* cmd, int& max_domain_index) {
    cmd->add_option("--max-domain-index", max_domain_index, "Largest valid Y1 value")
        ->capture_default_str();
}

void add_rank_flags(CLI::App* cmd, RankFlags& flags) {
    cmd->add_option("--window", flags.window, "Co-occurrence window size")->capture_default_str();
    cmd->add_option("--mode", flags.mode, "Ranking mode: pure or damped")->capture_default_str();
    cmd->add_option("--damping", flags.damping, "Damping factor (damped mode only)")
        ->capture_default_str();
    cmd->add_option("--tolerance", flags.tolerance, "Power-iteration stopping tolerance")
        ->capture_default_str();
    cmd->add_option("--max-iterations", flags.max_iterations, "Power-iteration cap")
        ->capture_default_str();
    cmd->add_option("--top-k", flags.top_k, "Number of top terms to keep")->capture_default_str();
}

PipelineConfig validate_pipeline(const PipelineFlags& flags) {
    PipelineConfig config;
    config.lowercase = flags.lowercase;
    config.remove_numbers = flags.remove_numbers;
    if (flags.min_token_len < 1) {
        throw ConfigError("--min-token-len must be at least 1");
    }
    config.min_token_len = flags.min_token_len;
    config.nouns_only = flags.nouns_only;
    const std::string norm = to_lower(flags.normalizer);
    if (norm == "identity") {
        config.normalizer = Normalizer::Identity;
    } else if (norm == "lightstem") {
        config.normalizer = Normalizer::LightStem;
    } else {
        throw ConfigError("--normalizer must be identity or lightstem");
    }
    if (flags.bridge_stopwords_max < 0) {
        throw ConfigError("--bridge-stopwords must be non-negative");
    }
    config.bridge_stopwords_max = flags.bridge_stopwords_max;
    config.agglomerate = flags.agglomerate || flags.bridge_stopwords_max > 0;
    config.split_inner_punct = flags.split_inner_punct;
    if (!flags.stopword_file.empty()) {
        config.stopwords = load_stopwords_file(flags.stopword_file);
    }
    return config;
}

RankConfig validate_rank(const RankFlags& flags, bool damping_given) {
    RankConfig config;
    if (flags.window < 2) {
        throw ConfigError("--window must be at least 2");
    }
    config.window = flags.window;
    const std::string mode = to_lower(flags.mode);
    if (mode == "pure") {
        config.mode = RankMode::Pure;
        if (damping_given) {
            throw ConfigError("--damping conflicts with --mode pure");
        }
    } else if (mode == "damped") {
        config.mode = RankMode::Damped;
    } else {
        throw ConfigError("--mode must be pure or damped");
    }
    if (flags.damping < 0.0 || flags.damping > 1.0) {
        throw ConfigError("--damping must lie in [0, 1]");
    }
    config.damping = flags.damping;
    if (!(flags.tolerance > 0.0)) {
        throw ConfigError("--tolerance must be positive");
    }
    config.tolerance = flags.tolerance;
    if (flags.max_iterations < 1) {
        throw ConfigError("--max-iterations must be at least 1");
    }
    config.max_iterations = flags.max_iterations;
    if (flags.top_k < 1) {
        throw ConfigError("--top-k must be at least 1");
    }
    config.top_k = flags.top_k;
    return config;
}

double validate_threshold(double threshold) {
    if (threshold < 0.0 || threshold > 1.0) {
        throw ConfigError("--threshold must lie in [0, 1]");
    }
    return threshold;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot open output file: " + path);
    }
    return out;
}

std::string json_escape(std::string_view s) {
    return nlohmann::json(std::string(s)).dump();
}

// ---------------------------------------------------------------- extract

std::vector<ExtractionRecord> extract_all(const Corpus& corpus, const PipelineConfig& pipeline,
                                          const RankConfig& rank, int threads) {
    std::vector<ExtractionRecord> records(corpus.size());
    const auto work = [&](std::size_t i) {
        const auto& rec = corpus.records[i];
        records[i] = extraction_record(rec.doc_id, extract_keywords(rec.abstract, pipeline, rank));
    };
    if (threads <= 1) {
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            work(i);
        }
        return records;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            try {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= corpus.size()) {
                        return;
                    }
                    work(i);
                }
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(corpus.size());
            }
        });
    }
    for (auto& worker : pool) {
        worker.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return records;
}

// ---------------------------------------------------------------- reports

std::string instance_json(const InstanceScore& s, const std::string& id_key, long id) {
    std::ostringstream out;
    out << "{";
    if (!id_key.empty()) {
        out << "\"" << id_key << "\":" << id << ",";
    }
    out << "\"precision\":" << format_score(s.precision) << ",\"recall\":" << format_score(s.recall)
        << ",\"f1\":" << format_score(s.f1) << ",\"n_candidates\":" << s.n_candidates
        << ",\"n_references\":" << s.n_references << ",\"n_matched\":" << s.n_matched << "}";
    return out.str();
}

void write_report_json(std::ostream& out, const EvalReport& report, const std::string& id_key,
                       const std::vector<long>& ids) {
    out << "{\"micro\":" << instance_json(report.micro, "", 0)
        << ",\"macro\":" << instance_json(report.macro, "", 0) << ",\"per_instance\":[";
    for (std::size_t i = 0; i < report.per_instance.size(); ++i) {
        if (i > 0) {
            out << ',';
        }
        out << instance_json(report.per_instance[i], id_key, ids[i]);
    }
    out << "]}\n";
}

void print_report_table(const EvalReport& report) {
    std::printf("%-8s %10s %10s %10s %12s %12s %10s\n", "", "precision", "recall", "f1",
                "candidates", "references", "matched");
    const auto row = [](const char* name, const InstanceScore& s) {
        std::printf("%-8s %10.6f %10.6f %10.6f %12ld %12ld %10ld\n", name, s.precision, s.recall,
                    s.f1, s.n_candidates, s.n_references, s.n_matched);
    };
    row("micro", report.micro);
    row("macro", report.macro);
}

// ------------------------------------------------------------ subcommands

int cmd_ingest(const std::string& in_path, const std::string& out_path,
               const CsvFormat& format) {
    const Corpus corpus = parse_corpus_file(in_path, format);

    std::map<std::string, std::size_t> domain_counts;
    std::size_t total_keywords = 0;
    for (const auto& rec : corpus.records) {
        ++domain_counts[rec.domain];
        total_keywords += parse_keyword_list(rec.raw_keywords).size();
    }

    auto out = open_output(out_path);
    out << "{\"source\":" << json_escape(corpus.source_path) << ",\"records\":" << corpus.size()
        << ",\"reference_keywords\":" << total_keywords << ",\"domains\":{";
    bool first = true;
    for (const auto& [domain, count] : domain_counts) {
        if (!first) {
            out << ',';
        }
        first = false;
        out << json_escape(domain) << ":" << count;
    }
    out << "}}\n";

    std::printf("ingested %zu records from %s\n", corpus.size(), in_path.c_str());
    return kExitOk;
}

int cmd_split(const std::string& in_path, const std::string& out_path, double ratio,
              std::uint64_t seed, bool stratify, const CsvFormat& format) {
    if (!(ratio > 0.0 && ratio < 1.0)) {
        throw ConfigError("--ratio must lie strictly between 0 and 1");
    }
    const Corpus corpus = parse_corpus_file(in_path, format);
    SplitOptions options;
    options.stratify_by_domain = stratify;
    const SplitResult result = split_corpus(corpus, ratio, seed, options);

    auto out = open_output(out_path);
    out << "{\"ratio\":" << format_score(ratio) << ",\"seed\":" << seed
        << ",\"stratified\":" << (stratify ? "true" : "false")
        << ",\"n_train\":" << result.train_ids.size() << ",\"n_test\":" << result.test_ids.size()
        << ",\"train_ids\":[";
    for (std::size_t i = 0; i < result.train_ids.size(); ++i) {
        if (i > 0) {
            out << ',';
        }
        out << result.train_ids[i];
    }
    out << "],\"test_ids\":[";
    for (std::size_t i = 0; i < result.test_ids.size(); ++i) {
        if (i > 0) {
            out << ',';
        }
        out << result.test_ids[i];
    }
    out << "]}\n";

    std::printf("split %zu records into %zu train / %zu test (ratio %.6f, seed %llu)\n",
                corpus.size(), result.train_ids.size(), result.test_ids.size(), ratio,
                static_cast<unsigned long long>(seed));
    return kExitOk;
}

int cmd_extract(const std::string& in_path, const std::string& out_path,
                const PipelineConfig& pipeline, const RankConfig& rank, int threads,
                const CsvFormat& format) {
    if (threads < 1) {
        throw ConfigError("--threads must be at least 1");
    }
    const Corpus corpus = parse_corpus_file(in_path, format);
    const auto records = extract_all(corpus, pipeline, rank, threads);

    auto out = open_output(out_path);
    write_extraction_jsonl(out, records);

    std::printf("extracted keyphrases for %zu documents -> %s\n", records.size(), out_path.c_str());
    return kExitOk;
}

int cmd_cluster(const std::string& in_path, const std::string& embeddings_path,
                const std::string& out_path, int k, std::uint64_t seed, int kmeans_max_iterations,
                bool plusplus, const PipelineConfig& pipeline, const RankConfig& rank,
                const CsvFormat& format) {
    const Corpus corpus = parse_corpus_file(in_path, format);
    const EmbeddingTable table = load_embeddings_file(embeddings_path);
    for (const int doc_id : table.doc_ids) {
        if (doc_id < 0 || static_cast<std::size_t>(doc_id) >= corpus.size()) {
            std::ostringstream msg;
            msg << embeddings_path << ": doc_id " << doc_id << " not present in corpus";
            throw ParseError(msg.str());
        }
    }

    KMeansOptions options;
    options.max_iterations = kmeans_max_iterations;
    options.plusplus_init = plusplus;
    const ClusterModel model = kmeans(table, k, seed, options);
    const auto phrases = extract_cluster_keyphrases(corpus, model, pipeline, rank);
    const auto references = build_cluster_reference(corpus, model);

    std::vector<std::size_t> sizes(static_cast<std::size_t>(model.k), 0);
    for (const int assignment : model.row_assignments) {
        ++sizes[static_cast<std::size_t>(assignment)];
    }

    auto out = open_output(out_path);
    out << "{\"k\":" << model.k << ",\"seed\":" << model.seed
        << ",\"iterations\":" << model.iterations
        << ",\"converged\":" << (model.converged ? "true" : "false")
        << ",\"inertia\":" << format_score(model.inertia) << ",\"clusters\":[";
    for (int c = 0; c < model.k; ++c) {
        if (c > 0) {
            out << ',';
        }
        out << "{\"cluster\":" << c << ",\"size\":" << sizes[static_cast<std::size_t>(c)]
            << ",\"top_phrases\":[";
        const auto& cluster_phrases = phrases.at(c);
        for (std::size_t i = 0; i < cluster_phrases.size(); ++i) {
            if (i > 0) {
                out << ',';
            }
            out << "{\"text\":" << json_escape(cluster_phrases[i].text)
                << ",\"score\":" << format_score(cluster_phrases[i].score) << "}";
        }
        out << "],\"reference_keywords\":[";
        const auto& cluster_refs = references.at(c);
        for (std::size_t i = 0; i < cluster_refs.size(); ++i) {
            if (i > 0) {
                out << ',';
            }
            out << "{\"text\":" << json_escape(cluster_refs[i].text)
                << ",\"frequency\":" << cluster_refs[i].frequency << "}";
        }
        out << "]}";
    }
    out << "]}\n";

    std::printf("clustered %lld documents into %d clusters (inertia %.6f, %d iterations)\n",
                static_cast<long long>(table.size()), model.k, model.inertia, model.iterations);
    return kExitOk;
}

int cmd_evaluate_instances(const std::string& candidates_path, const std::string& in_path,
                           const std::string& out_path, const MatchConfig& config,
                           const CsvFormat& format) {
    const Corpus corpus = parse_corpus_file(in_path, format);
    const auto records = read_extraction_jsonl_file(candidates_path);

    std::vector<InstanceScore> scores;
    std::vector<long> ids;
    scores.reserve(records.size());
    for (const auto& record : records) {
        if (record.doc_id < 0 || static_cast<std::size_t>(record.doc_id) >= corpus.size()) {
            std::ostringstream msg;
            msg << candidates_path << ": doc_id " << record.doc_id << " not present in corpus";
            throw ParseError(msg.str());
        }
        std::vector<std::string> candidates;
        candidates.reserve(record.phrases.size());
        for (const auto& phrase : record.phrases) {
            candidates.push_back(phrase.text);
        }
        const auto references =
            parse_keyword_list(corpus.records[static_cast<std::size_t>(record.doc_id)].raw_keywords);
        scores.push_back(score_instance(match_lists(candidates, references, config)));
        ids.push_back(record.doc_id);
    }
    if (scores.empty()) {
        throw ParseError(candidates_path + ": no extraction records to evaluate");
    }
    const EvalReport report = aggregate(scores);

    auto out = open_output(out_path);
    write_report_json(out, report, "doc_id", ids);
    print_report_table(report);
    return kExitOk;
}

int cmd_evaluate_clusters(const std::string& clusters_path, const std::string& out_path,
                          const MatchConfig& config) {
    std::ifstream in(clusters_path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open cluster file: " + clusters_path);
    }
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(clusters_path + ": invalid JSON: " + e.what());
    }
    if (!parsed.contains("clusters")) {
        throw ParseError(clusters_path + ": expected a \"clusters\" array");
    }

    std::map<int, std::vector<std::string>> candidates;
    std::map<int, std::vector<std::string>> references;
    for (const auto& cluster : parsed.at("clusters")) {
        const int id = cluster.at("cluster").get<int>();
        for (const auto& phrase : cluster.at("top_phrases")) {
            candidates[id].push_back(phrase.at("text").get<std::string>());
        }
        for (const auto& ref : cluster.at("reference_keywords")) {
            references[id].push_back(ref.at("text").get<std::string>());
        }
        candidates.try_emplace(id);
        references.try_emplace(id);
    }
    const EvalReport report = evaluate_cluster(candidates, references, config);

    std::vector<long> ids;
    for (const auto& [id, unused] : candidates) {
        ids.push_back(id);
    }
    auto out = open_output(out_path);
    write_report_json(out, report, "cluster", ids);
    print_report_table(report);
    return kExitOk;
}

int cmd_nermatch(const std::string& in_path, const std::string& annotations_path,
                 const std::string& manifest_path, const std::string& task,
                 const std::string& model_id, const std::string& out_path,
                 const MatchConfig& config, const CsvFormat& format) {
    const Corpus corpus = parse_corpus_file(in_path, format);
    std::vector<ModelManifest> manifests;
    if (!manifest_path.empty()) {
        manifests = load_manifests_file(manifest_path);
    } else {
        manifests = {{"ner-4class", {"LOC", "PER", "ORG", "MISC"}},
                     {"hunflair", {"Chemical", "Disease", "Species", "Gene", "CellLine"}}};
    }
    const auto annotations = load_annotations_file(annotations_path, manifests);

    if (task == "presence") {
        const auto rows = keyword_presence(corpus, annotations, config);
        std::set<std::string> models;
        for (const auto& a : annotations) {
            models.insert(a.model_id);
        }
        auto out = open_output(out_path);
        out << "doc_id\tkeyword\tin_abstract\tbest_sim";
        for (const auto& model : models) {
            out << '\t' << model;
        }
        out << '\n';
        for (const auto& row : rows) {
            out << row.doc_id << '\t' << row.keyword << '\t' << (row.in_abstract ? 1 : 0) << '\t'
                << format_score(row.best_abstract_similarity);
            for (const auto& model : models) {
                const auto it = row.found_by.find(model);
                out << '\t' << (it != row.found_by.end() && it->second ? 1 : 0);
            }
            out << '\n';
        }
        std::printf("presence table for %zu (document, keyword) pairs -> %s\n", rows.size(),
                    out_path.c_str());
        return kExitOk;
    }

    if (task == "evaluate") {
        if (model_id.empty()) {
            throw ConfigError("--model is required for --task evaluate");
        }
        const EvalReport report = evaluate_ner_as_keywords(corpus, annotations, model_id, config);
        std::vector<long> ids;
        ids.reserve(corpus.size());
        for (const auto& rec : corpus.records) {
            ids.push_back(rec.doc_id);
        }
        auto out = open_output(out_path);
        write_report_json(out, report, "doc_id", ids);
        print_report_table(report);
        return kExitOk;
    }

    throw ConfigError("--task must be presence or evaluate");
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"kex: keyword extraction, clustering and evaluation for scientific abstracts",
                 "kex"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Parse and validate a corpus CSV");
    std::string ingest_in;
    std::string ingest_out;
    int ingest_max_domain = 6;
    ingest->add_option("--in", ingest_in, "Corpus CSV")->required();
    ingest->add_option("--out", ingest_out, "Summary JSON output")->required();
    add_corpus_flags(ingest, ingest_max_domain);

    // split
    auto* split_cmd = app.add_subcommand("split", "Deterministic train/test split");
    std::string split_in;
    std::string split_out;
    double split_ratio = 0.7;
    std::uint64_t split_seed = 1;
    bool split_stratify = false;
    int split_max_domain = 6;
    add_corpus_flags(split_cmd, split_max_domain);
    split_cmd->add_option("--in", split_in, "Corpus CSV")->required();
    split_cmd->add_option("--out", split_out, "Split JSON output")->required();
    split_cmd->add_option("--ratio", split_ratio, "Train fraction")->capture_default_str();
    split_cmd->add_option("--seed", split_seed, "Shuffle seed")->capture_default_str();
    split_cmd->add_flag("--stratify", split_stratify, "Split within each Y1 group");

    // extract
    auto* extract_cmd = app.add_subcommand("extract", "Per-document keyphrase extraction");
    std::string extract_in;
    std::string extract_out;
    int extract_threads = 1;
    PipelineFlags extract_pipeline;
    RankFlags extract_rank;
    int extract_max_domain = 6;
    add_corpus_flags(extract_cmd, extract_max_domain);
    extract_cmd->add_option("--in", extract_in, "Corpus CSV")->required();
    extract_cmd->add_option("--out", extract_out, "Extraction JSONL output")->required();
    extract_cmd->add_option("--threads", extract_threads, "Worker threads")->capture_default_str();
    add_pipeline_flags(extract_cmd, extract_pipeline);
    add_rank_flags(extract_cmd, extract_rank);

    // cluster
    auto* cluster_cmd = app.add_subcommand("cluster", "K-Means over document embeddings");
    std::string cluster_in;
    std::string cluster_embeddings;
    std::string cluster_out;
    int cluster_k = 7;
    std::uint64_t cluster_seed = 1;
    int cluster_max_iterations = 100;
    bool cluster_plusplus = false;
    PipelineFlags cluster_pipeline;
    RankFlags cluster_rank;
    int cluster_max_domain = 6;
    add_corpus_flags(cluster_cmd, cluster_max_domain);
    cluster_cmd->add_option("--in", cluster_in, "Corpus CSV")->required();
    cluster_cmd->add_option("--embeddings", cluster_embeddings, "Embedding TSV")->required();
    cluster_cmd->add_option("--out", cluster_out, "Cluster JSON output")->required();
    cluster_cmd->add_option("--k", cluster_k, "Number of clusters")->capture_default_str();
    cluster_cmd->add_option("--seed", cluster_seed, "Initialization seed")->capture_default_str();
    cluster_cmd->add_option("--cluster-max-iterations", cluster_max_iterations,
                            "K-Means iteration cap")
        ->capture_default_str();
    cluster_cmd->add_flag("--kmeanspp", cluster_plusplus, "Distance-weighted seeding");
    add_pipeline_flags(cluster_cmd, cluster_pipeline);
    add_rank_flags(cluster_cmd, cluster_rank);

    // evaluate
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Fuzzy-match evaluation");
    std::string evaluate_candidates;
    std::string evaluate_clusters;
    std::string evaluate_in;
    std::string evaluate_out;
    double evaluate_threshold = 0.8;
    bool evaluate_case_fold = true;
    int evaluate_max_domain = 6;
    add_corpus_flags(evaluate_cmd, evaluate_max_domain);
    evaluate_cmd->add_option("--candidates", evaluate_candidates,
                             "Extraction JSONL (instance-based evaluation)");
    evaluate_cmd->add_option("--clusters", evaluate_clusters,
                             "Cluster JSON (cluster-based evaluation)");
    evaluate_cmd->add_option("--in", evaluate_in, "Corpus CSV with reference keywords");
    evaluate_cmd->add_option("--out", evaluate_out, "Report JSON output")->required();
    evaluate_cmd->add_option("--threshold", evaluate_threshold, "Similarity cut-off")
        ->capture_default_str();
    evaluate_cmd->add_flag("--case-fold,!--no-case-fold", evaluate_case_fold,
                           "Case-fold before matching (default on)");

    // nermatch
    auto* nermatch_cmd = app.add_subcommand("nermatch", "NER annotations as keyword candidates");
    std::string nermatch_in;
    std::string nermatch_annotations;
    std::string nermatch_manifest;
    std::string nermatch_task = "presence";
    std::string nermatch_model;
    std::string nermatch_out;
    double nermatch_threshold = 0.8;
    bool nermatch_case_fold = true;
    int nermatch_max_domain = 6;
    add_corpus_flags(nermatch_cmd, nermatch_max_domain);
    nermatch_cmd->add_option("--in", nermatch_in, "Corpus CSV")->required();
    nermatch_cmd->add_option("--annotations", nermatch_annotations, "Annotation TSV")->required();
    nermatch_cmd->add_option("--manifest", nermatch_manifest,
                             "Model manifest JSON (defaults to the built-in models)");
    nermatch_cmd->add_option("--task", nermatch_task, "presence or evaluate")->capture_default_str();
    nermatch_cmd->add_option("--model", nermatch_model, "Model id (evaluate task)");
    nermatch_cmd->add_option("--out", nermatch_out, "Output path")->required();
    nermatch_cmd->add_option("--threshold", nermatch_threshold, "Similarity cut-off")
        ->capture_default_str();
    nermatch_cmd->add_flag("--case-fold,!--no-case-fold", nermatch_case_fold,
                           "Case-fold before matching (default on)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsageError;
    }

    try {
        const auto corpus_format = [](int max_domain_index) {
            CsvFormat format;
            format.max_domain_index = max_domain_index;
            return format;
        };
        if (*ingest) {
            return cmd_ingest(ingest_in, ingest_out, corpus_format(ingest_max_domain));
        }
        if (*split_cmd) {
            return cmd_split(split_in, split_out, split_ratio, split_seed, split_stratify,
                             corpus_format(split_max_domain));
        }
        if (*extract_cmd) {
            const auto rank =
                validate_rank(extract_rank, extract_cmd->count("--damping") > 0);
            const auto pipeline = validate_pipeline(extract_pipeline);
            return cmd_extract(extract_in, extract_out, pipeline, rank, extract_threads,
                               corpus_format(extract_max_domain));
        }
        if (*cluster_cmd) {
            const auto rank = validate_rank(cluster_rank, cluster_cmd->count("--damping") > 0);
            const auto pipeline = validate_pipeline(cluster_pipeline);
            if (cluster_k < 1) {
                throw ConfigError("--k must be at least 1");
            }
            return cmd_cluster(cluster_in, cluster_embeddings, cluster_out, cluster_k, cluster_seed,
                               cluster_max_iterations, cluster_plusplus, pipeline, rank,
                               corpus_format(cluster_max_domain));
        }
        if (*evaluate_cmd) {
            MatchConfig config;
            config.threshold = validate_threshold(evaluate_threshold);
            config.case_fold = evaluate_case_fold;
            const bool instance_mode = !evaluate_candidates.empty();
            const bool cluster_mode = !evaluate_clusters.empty();
            if (instance_mode == cluster_mode) {
                throw ConfigError("evaluate needs exactly one of --candidates or --clusters");
            }
            if (instance_mode) {
                if (evaluate_in.empty()) {
                    throw ConfigError("--in is required with --candidates");
                }
                return cmd_evaluate_instances(evaluate_candidates, evaluate_in, evaluate_out,
                                              config, corpus_format(evaluate_max_domain));
            }
            return cmd_evaluate_clusters(evaluate_clusters, evaluate_out, config);
        }
        if (*nermatch_cmd) {
            MatchConfig config;
            config.threshold = validate_threshold(nermatch_threshold);
            config.case_fold = nermatch_case_fold;
            return cmd_nermatch(nermatch_in, nermatch_annotations, nermatch_manifest, nermatch_task,
                                nermatch_model, nermatch_out, config,
                                corpus_format(nermatch_max_domain));
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsageError;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInputError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInputError;
    }
    return kExitUsageError;
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 1 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run_cli(args);
}

} // namespace kex
