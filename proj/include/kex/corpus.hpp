#ifndef KEX_CORPUS_HPP
#define KEX_CORPUS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace kex {

// One row of the corpus table. doc_id is the 0-based ingest order.
struct DocumentRecord {
    int doc_id = 0;
    int y1 = 0; // domain index
    int y2 = 0; // area index
    int y = 0;  // sub-sub-domain index (carried, never interpreted)
    std::string domain;
    std::string area;
    std::string raw_keywords; // ";"-separated reference list
    std::string abstract;
};

struct Corpus {
    std::vector<DocumentRecord> records;
    std::string source_path;

    std::size_t size() const { return records.size(); }
};

struct CsvFormat {
    char delimiter = ',';
    char quote = '"';
    // Upper bound for the domain index column; 6 for the seven-domain corpus.
    int max_domain_index = 6;
};

// Parses a delimited UTF-8 table with a header row. Required columns:
// Y1, Y2, Y, Domain, area, keywords, Abstract (case-sensitive); extra
// columns are ignored. Quoted fields may contain delimiters and newlines.
Corpus parse_corpus(std::istream& in, const CsvFormat& format = {},
                    std::string_view source_name = "<stream>");
Corpus parse_corpus_file(const std::string& path, const CsvFormat& format = {});

// Splits a ";"-separated keyword string: segments trimmed, empties dropped,
// casing preserved.
std::vector<std::string> parse_keyword_list(std::string_view raw);

struct SplitOptions {
    // When set, the split rule is applied independently within each Y1 group.
    bool stratify_by_domain = false;
};

struct SplitResult {
    std::vector<int> train_ids;
    std::vector<int> test_ids;
    std::uint64_t seed = 0;
    double ratio = 0.0; // train fraction
};

// Seeded shuffle split. The test-set size is ceil((1 - ratio) * N) with the
// ratio read as a rational in millionths, so decimal ratios like 0.7 behave
// exactly. Identical (corpus, ratio, seed) inputs give identical splits.
SplitResult split_corpus(const Corpus& corpus, double ratio, std::uint64_t seed,
                         const SplitOptions& options = {});

// The exact test-set size rule used by split_corpus.
std::size_t test_set_size(std::size_t n, double ratio);

} // namespace kex

#endif // KEX_CORPUS_HPP
