#include "kex/corpus.hpp"

#include "kex/errors.hpp"
#include "kex/strutil.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <random>
#include <sstream>

namespace kex {

namespace {

// Reads one CSV record (which may span physical lines inside quotes).
// Returns false when the stream is exhausted before any content.
bool read_csv_record(std::istream& in, const CsvFormat& format, std::vector<std::string>& fields) {
    fields.clear();
    std::string field;
    bool in_quotes = false;
    bool any_char = false;
    int c;
    while ((c = in.get()) != std::char_traits<char>::eof()) {
        any_char = true;
        const char ch = static_cast<char>(c);
        if (in_quotes) {
            if (ch == format.quote) {
                if (in.peek() == format.quote) {
                    field.push_back(format.quote);
                    in.get();
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(ch);
            }
        } else if (ch == format.quote && field.empty()) {
            in_quotes = true;
        } else if (ch == format.delimiter) {
            fields.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n') {
            if (!field.empty() && field.back() == '\r') {
                field.pop_back();
            }
            fields.push_back(std::move(field));
            return true;
        } else {
            field.push_back(ch);
        }
    }
    if (!any_char) {
        return false;
    }
    fields.push_back(std::move(field));
    return true;
}

int parse_int_field(std::string_view raw, std::string_view column, std::size_t row,
                    std::string_view source) {
    const auto t = trim(raw);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        std::ostringstream msg;
        msg << source << ": row " << row << ": column \"" << column
            << "\" is not an integer: \"" << t << "\"";
        throw ParseError(msg.str());
    }
    return value;
}

} // namespace

Corpus parse_corpus(std::istream& in, const CsvFormat& format, std::string_view source_name) {
    Corpus corpus;
    corpus.source_path = std::string(source_name);

    std::vector<std::string> header;
    if (!read_csv_record(in, format, header)) {
        throw ParseError(std::string(source_name) + ": empty input, header row required");
    }

    const std::vector<std::string> required = {"Y1", "Y2", "Y", "Domain",
                                               "area", "keywords", "Abstract"};
    std::map<std::string, std::size_t> column_of;
    for (std::size_t i = 0; i < header.size(); ++i) {
        column_of.emplace(std::string(trim(header[i])), i);
    }
    for (const auto& name : required) {
        if (column_of.find(name) == column_of.end()) {
            throw ParseError(std::string(source_name) + ": missing required column \"" + name + "\"");
        }
    }

    std::vector<std::string> fields;
    std::size_t row = 1; // header is row 1
    while (read_csv_record(in, format, fields)) {
        ++row;
        if (fields.size() == 1 && trim(fields[0]).empty()) {
            continue; // blank line
        }
        if (fields.size() < header.size()) {
            std::ostringstream msg;
            msg << source_name << ": row " << row << ": has " << fields.size()
                << " fields, header has " << header.size();
            throw ParseError(msg.str());
        }
        DocumentRecord rec;
        rec.doc_id = static_cast<int>(corpus.records.size());
        rec.y1 = parse_int_field(fields[column_of["Y1"]], "Y1", row, source_name);
        rec.y2 = parse_int_field(fields[column_of["Y2"]], "Y2", row, source_name);
        rec.y = parse_int_field(fields[column_of["Y"]], "Y", row, source_name);
        rec.domain = std::string(trim(fields[column_of["Domain"]]));
        rec.area = std::string(trim(fields[column_of["area"]]));
        rec.raw_keywords = std::string(trim(fields[column_of["keywords"]]));
        rec.abstract = std::string(trim(fields[column_of["Abstract"]]));
        if (rec.y1 < 0 || rec.y1 > format.max_domain_index) {
            std::ostringstream msg;
            msg << source_name << ": row " << row << ": Y1 value " << rec.y1
                << " outside [0, " << format.max_domain_index << "]";
            throw ParseError(msg.str());
        }
        if (rec.abstract.empty()) {
            std::ostringstream msg;
            msg << source_name << ": row " << row << ": empty Abstract";
            throw ParseError(msg.str());
        }
        corpus.records.push_back(std::move(rec));
    }
    return corpus;
}

Corpus parse_corpus_file(const std::string& path, const CsvFormat& format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open corpus file: " + path);
    }
    return parse_corpus(in, format, path);
}

std::vector<std::string> parse_keyword_list(std::string_view raw) {
    std::vector<std::string> keywords;
    for (const auto part : split(raw, ';')) {
        const auto t = trim(part);
        if (!t.empty()) {
            keywords.emplace_back(t);
        }
    }
    return keywords;
}

std::size_t test_set_size(std::size_t n, double ratio) {
    // Quantizing the ratio to millionths keeps decimal ratios exact;
    // ceil((1 - 0.7) * 1000) in plain doubles would give 301.
    const auto train_ppm = static_cast<std::int64_t>(std::llround(ratio * 1'000'000.0));
    const std::int64_t test_ppm = 1'000'000 - train_ppm;
    const auto wide_n = static_cast<std::int64_t>(n);
    return static_cast<std::size_t>((test_ppm * wide_n + 999'999) / 1'000'000);
}

namespace {

void shuffled_split(const std::vector<int>& ids, double ratio, std::mt19937_64& rng,
                    SplitResult& out) {
    std::vector<int> shuffled = ids;
    for (std::size_t i = shuffled.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng() % i);
        std::swap(shuffled[i - 1], shuffled[j]);
    }
    const std::size_t n_test = test_set_size(shuffled.size(), ratio);
    out.test_ids.insert(out.test_ids.end(), shuffled.begin(),
                        shuffled.begin() + static_cast<std::ptrdiff_t>(n_test));
    out.train_ids.insert(out.train_ids.end(),
                         shuffled.begin() + static_cast<std::ptrdiff_t>(n_test), shuffled.end());
}

} // namespace

SplitResult split_corpus(const Corpus& corpus, double ratio, std::uint64_t seed,
                         const SplitOptions& options) {
    if (!(ratio > 0.0 && ratio < 1.0)) {
        throw ConfigError("split ratio must lie strictly between 0 and 1");
    }
    if (corpus.records.empty()) {
        throw ConfigError("cannot split an empty corpus");
    }

    SplitResult result;
    result.seed = seed;
    result.ratio = ratio;

    std::mt19937_64 rng(seed);
    if (options.stratify_by_domain) {
        std::map<int, std::vector<int>> by_domain;
        for (const auto& rec : corpus.records) {
            by_domain[rec.y1].push_back(rec.doc_id);
        }
        for (auto& [y1, ids] : by_domain) {
            shuffled_split(ids, ratio, rng, result);
        }
    } else {
        std::vector<int> ids;
        ids.reserve(corpus.records.size());
        for (const auto& rec : corpus.records) {
            ids.push_back(rec.doc_id);
        }
        shuffled_split(ids, ratio, rng, result);
    }
    std::sort(result.train_ids.begin(), result.train_ids.end());
    std::sort(result.test_ids.begin(), result.test_ids.end());
    return result;
}

} // namespace kex
