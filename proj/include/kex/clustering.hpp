#ifndef KEX_CLUSTERING_HPP
#define KEX_CLUSTERING_HPP

#include "kex/corpus.hpp"
#include "kex/textrank.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace kex {

// Document vectors, one row per doc_id, all of the same dimension.
struct EmbeddingTable {
    Eigen::Index dim = 0;
    std::vector<int> doc_ids; // row order
    Eigen::MatrixXd vectors;  // size() x dim
    std::unordered_map<int, Eigen::Index> row_of;

    Eigen::Index size() const { return vectors.rows(); }
};

// Reads tab-separated rows: doc_id followed by `dim` decimal numbers. The
// dimension is inferred from the first row; inconsistent rows, non-finite
// values and duplicate ids are format errors carrying the row number.
EmbeddingTable load_embeddings(std::istream& in, std::string_view source_name = "<stream>");
EmbeddingTable load_embeddings_file(const std::string& path);

struct KMeansOptions {
    int max_iterations = 100;
    // Distance-weighted (k-means++) seeding instead of plain sampling.
    bool plusplus_init = false;
};

struct ClusterModel {
    int k = 0;
    Eigen::MatrixXd centroids; // k x dim
    std::vector<int> doc_ids;  // row order, copied from the table
    std::vector<int> row_assignments;
    std::unordered_map<int, int> assignments; // doc_id -> cluster index
    double inertia = 0.0;
    int iterations = 0;
    std::uint64_t seed = 0;
    bool converged = false;
    std::vector<double> inertia_history; // one entry per assignment pass
};

// Lloyd's algorithm. Initial centroids are k distinct input points drawn by
// a seeded shuffle (or k-means++ when configured). Assignment uses squared
// Euclidean distance with ties going to the lowest cluster index; an empty
// cluster is reseeded with the point farthest from its current centroid.
// Terminates when assignments stop changing or after max_iterations.
ClusterModel kmeans(const EmbeddingTable& table, int k, std::uint64_t seed,
                    const KMeansOptions& options = {});

// Concatenates each cluster's member abstracts (doc_id order, terminated and
// blank-line separated) and extracts keyphrases from the joined text. Every
// cluster in [0, k) gets an entry; empty clusters map to empty lists.
std::map<int, std::vector<Keyphrase>> extract_cluster_keyphrases(const Corpus& corpus,
                                                                 const ClusterModel& model,
                                                                 const PipelineConfig& pipeline,
                                                                 const RankConfig& rank);

struct ReferenceKeyword {
    std::string text; // first-seen casing
    int frequency = 0;
};

// Union of the member records' reference keyword lists per cluster,
// deduplicated case-insensitively with occurrence counts.
std::map<int, std::vector<ReferenceKeyword>> build_cluster_reference(const Corpus& corpus,
                                                                     const ClusterModel& model);

} // namespace kex

#endif // KEX_CLUSTERING_HPP
