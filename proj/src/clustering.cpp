#include "kex/clustering.hpp"

#include "kex/errors.hpp"
#include "kex/strutil.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace kex {

namespace {

double parse_double_field(std::string_view raw, std::size_t row, std::string_view source) {
    const auto t = trim(raw);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << source << ": row " << row << ": invalid embedding value \"" << t << "\"";
        throw ParseError(msg.str());
    }
    return value;
}

} // namespace

EmbeddingTable load_embeddings(std::istream& in, std::string_view source_name) {
    EmbeddingTable table;
    std::vector<double> data;
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
        if (fields.size() < 2) {
            std::ostringstream msg;
            msg << source_name << ": row " << row << ": expected doc_id and at least one value";
            throw ParseError(msg.str());
        }
        const auto dim = static_cast<Eigen::Index>(fields.size()) - 1;
        if (table.doc_ids.empty()) {
            table.dim = dim;
        } else if (dim != table.dim) {
            std::ostringstream msg;
            msg << source_name << ": row " << row << ": expected " << table.dim << " values, got "
                << dim;
            throw ParseError(msg.str());
        }

        const auto id_field = trim(fields[0]);
        int doc_id = 0;
        const auto [ptr, ec] = std::from_chars(id_field.data(), id_field.data() + id_field.size(), doc_id);
        if (ec != std::errc() || ptr != id_field.data() + id_field.size() || id_field.empty()) {
            std::ostringstream msg;
            msg << source_name << ": row " << row << ": invalid doc_id \"" << id_field << "\"";
            throw ParseError(msg.str());
        }
        if (!table.row_of.emplace(doc_id, static_cast<Eigen::Index>(table.doc_ids.size())).second) {
            std::ostringstream msg;
            msg << source_name << ": row " << row << ": duplicate doc_id " << doc_id;
            throw ParseError(msg.str());
        }
        table.doc_ids.push_back(doc_id);
        for (std::size_t i = 1; i < fields.size(); ++i) {
            data.push_back(parse_double_field(fields[i], row, source_name));
        }
    }

    const auto n = static_cast<Eigen::Index>(table.doc_ids.size());
    table.vectors = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                   Eigen::RowMajor>>(data.data(), n, table.dim);
    return table;
}

EmbeddingTable load_embeddings_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open embeddings file: " + path);
    }
    return load_embeddings(in, path);
}

namespace {

Eigen::MatrixXd initial_centroids(const EmbeddingTable& table, int k, std::mt19937_64& rng,
                                  bool plusplus) {
    const auto n = table.size();
    Eigen::MatrixXd centroids(k, table.dim);
    if (!plusplus) {
        // Partial Fisher-Yates: k distinct row indices.
        std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
        std::iota(idx.begin(), idx.end(), Eigen::Index{0});
        for (int i = 0; i < k; ++i) {
            const auto j = static_cast<std::size_t>(i) +
                           static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n - i));
            std::swap(idx[static_cast<std::size_t>(i)], idx[j]);
            centroids.row(i) = table.vectors.row(idx[static_cast<std::size_t>(i)]);
        }
        return centroids;
    }
    // k-means++: first centroid uniform, then distance-squared weighted.
    std::vector<double> dist2(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
    auto first = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n));
    centroids.row(0) = table.vectors.row(first);
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double d = (table.vectors.row(i) - centroids.row(c - 1)).squaredNorm();
            dist2[static_cast<std::size_t>(i)] = std::min(dist2[static_cast<std::size_t>(i)], d);
            total += dist2[static_cast<std::size_t>(i)];
        }
        if (total == 0.0) {
            // All points coincide with chosen centroids; keep sampling rows.
            centroids.row(c) = table.vectors.row(static_cast<Eigen::Index>(
                rng() % static_cast<std::uint64_t>(n)));
            continue;
        }
        const double draw =
            (static_cast<double>(rng()) / static_cast<double>(std::numeric_limits<std::uint64_t>::max())) *
            total;
        double cumulative = 0.0;
        Eigen::Index chosen = n - 1;
        for (Eigen::Index i = 0; i < n; ++i) {
            cumulative += dist2[static_cast<std::size_t>(i)];
            if (cumulative >= draw) {
                chosen = i;
                break;
            }
        }
        centroids.row(c) = table.vectors.row(chosen);
    }
    return centroids;
}

} // namespace

ClusterModel kmeans(const EmbeddingTable& table, int k, std::uint64_t seed,
                    const KMeansOptions& options) {
    const auto n = table.size();
    if (k < 1 || static_cast<Eigen::Index>(k) > n) {
        std::ostringstream msg;
        msg << "k must lie in [1, " << n << "], got " << k;
        throw ConfigError(msg.str());
    }
    if (options.max_iterations < 1) {
        throw ConfigError("max_iterations must be at least 1");
    }

    ClusterModel model;
    model.k = k;
    model.seed = seed;
    model.doc_ids = table.doc_ids;

    std::mt19937_64 rng(seed);
    model.centroids = initial_centroids(table, k, rng, options.plusplus_init);

    std::vector<int> assignments(static_cast<std::size_t>(n), -1);
    std::vector<int> previous;
    while (model.iterations < options.max_iterations) {
        // Assignment pass.
        double inertia = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            int best = 0;
            double best_d = (table.vectors.row(i) - model.centroids.row(0)).squaredNorm();
            for (int c = 1; c < k; ++c) {
                const double d = (table.vectors.row(i) - model.centroids.row(c)).squaredNorm();
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            assignments[static_cast<std::size_t>(i)] = best;
            inertia += best_d;
        }
        ++model.iterations;
        model.inertia_history.push_back(inertia);
        if (assignments == previous) {
            model.converged = true;
            break;
        }
        previous = assignments;

        // Update pass: centroid = mean of members, accumulated in row order.
        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, table.dim);
        std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto c = static_cast<std::size_t>(assignments[static_cast<std::size_t>(i)]);
            sums.row(static_cast<Eigen::Index>(c)) += table.vectors.row(i);
            ++counts[c];
        }
        std::vector<bool> reseeded(static_cast<std::size_t>(n), false);
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) {
                model.centroids.row(c) =
                    sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
            } else {
                // Reseed with the point farthest from this centroid.
                Eigen::Index farthest = 0;
                double farthest_d = -1.0;
                for (Eigen::Index i = 0; i < n; ++i) {
                    if (reseeded[static_cast<std::size_t>(i)]) {
                        continue;
                    }
                    const double d = (table.vectors.row(i) - model.centroids.row(c)).squaredNorm();
                    if (d > farthest_d) {
                        farthest_d = d;
                        farthest = i;
                    }
                }
                model.centroids.row(c) = table.vectors.row(farthest);
                reseeded[static_cast<std::size_t>(farthest)] = true;
            }
        }
    }

    model.row_assignments = std::move(assignments);
    model.inertia = model.inertia_history.empty() ? 0.0 : model.inertia_history.back();
    for (std::size_t i = 0; i < model.doc_ids.size(); ++i) {
        model.assignments.emplace(model.doc_ids[i], model.row_assignments[i]);
    }
    return model;
}

std::map<int, std::vector<Keyphrase>> extract_cluster_keyphrases(const Corpus& corpus,
                                                                 const ClusterModel& model,
                                                                 const PipelineConfig& pipeline,
                                                                 const RankConfig& rank) {
    std::map<int, std::vector<int>> members;
    for (int c = 0; c < model.k; ++c) {
        members[c] = {};
    }
    for (const auto& [doc_id, cluster] : model.assignments) {
        if (doc_id < 0 || static_cast<std::size_t>(doc_id) >= corpus.records.size()) {
            std::ostringstream msg;
            msg << "assigned doc_id " << doc_id << " not present in corpus";
            throw ConfigError(msg.str());
        }
        members[cluster].push_back(doc_id);
    }

    std::map<int, std::vector<Keyphrase>> result;
    for (auto& [cluster, ids] : members) {
        std::sort(ids.begin(), ids.end());
        std::string joined;
        for (const int id : ids) {
            const std::string& abstract = corpus.records[static_cast<std::size_t>(id)].abstract;
            if (abstract.empty()) {
                continue;
            }
            joined += abstract;
            const char last = abstract.back();
            if (last != '.' && last != '!' && last != '?') {
                joined += '.';
            }
            joined += "\n\n";
        }
        result[cluster] = extract_keywords(joined, pipeline, rank);
    }
    return result;
}

std::map<int, std::vector<ReferenceKeyword>> build_cluster_reference(const Corpus& corpus,
                                                                     const ClusterModel& model) {
    std::map<int, std::vector<int>> members;
    for (int c = 0; c < model.k; ++c) {
        members[c] = {};
    }
    for (const auto& [doc_id, cluster] : model.assignments) {
        if (doc_id >= 0 && static_cast<std::size_t>(doc_id) < corpus.records.size()) {
            members[cluster].push_back(doc_id);
        }
    }

    std::map<int, std::vector<ReferenceKeyword>> result;
    for (auto& [cluster, ids] : members) {
        std::sort(ids.begin(), ids.end());
        std::vector<ReferenceKeyword> list;
        std::unordered_map<std::string, std::size_t> index_of;
        for (const int id : ids) {
            for (const auto& keyword :
                 parse_keyword_list(corpus.records[static_cast<std::size_t>(id)].raw_keywords)) {
                const std::string key = to_lower(keyword);
                auto it = index_of.find(key);
                if (it == index_of.end()) {
                    index_of.emplace(key, list.size());
                    list.push_back({keyword, 1});
                } else {
                    ++list[it->second].frequency;
                }
            }
        }
        result[cluster] = std::move(list);
    }
    return result;
}

} // namespace kex
