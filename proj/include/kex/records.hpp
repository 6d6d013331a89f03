#ifndef KEX_RECORDS_HPP
#define KEX_RECORDS_HPP

#include "kex/textrank.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kex {

struct PhraseRecord {
    std::string text;
    double score = 0.0;
};

// One extraction output record per document.
struct ExtractionRecord {
    int doc_id = 0;
    std::vector<PhraseRecord> phrases;
};

// Fixed-point rendering with 6 decimal places, used for all phrase scores
// written to disk so outputs are byte-stable.
std::string format_score(double score);

// {"doc_id":N,"phrases":[{"text":...,"score":0.123456},...]}
std::string to_jsonl_line(const ExtractionRecord& record);

ExtractionRecord extraction_record(int doc_id, std::span<const Keyphrase> phrases);

void write_extraction_jsonl(std::ostream& out, std::span<const ExtractionRecord> records);
std::vector<ExtractionRecord> read_extraction_jsonl(std::istream& in,
                                                    std::string_view source_name = "<stream>");
std::vector<ExtractionRecord> read_extraction_jsonl_file(const std::string& path);

} // namespace kex

#endif // KEX_RECORDS_HPP
