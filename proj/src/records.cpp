#include "kex/records.hpp"

#include "kex/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace kex {

std::string format_score(double score) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.6f", score);
    return buffer;
}

std::string to_jsonl_line(const ExtractionRecord& record) {
    std::string line = "{\"doc_id\":" + std::to_string(record.doc_id) + ",\"phrases\":[";
    bool first = true;
    for (const auto& phrase : record.phrases) {
        if (!first) {
            line += ',';
        }
        first = false;
        line += "{\"text\":";
        line += nlohmann::json(phrase.text).dump();
        line += ",\"score\":";
        line += format_score(phrase.score);
        line += '}';
    }
    line += "]}";
    return line;
}

ExtractionRecord extraction_record(int doc_id, std::span<const Keyphrase> phrases) {
    ExtractionRecord record;
    record.doc_id = doc_id;
    record.phrases.reserve(phrases.size());
    for (const auto& phrase : phrases) {
        record.phrases.push_back({phrase.text, phrase.score});
    }
    return record;
}

void write_extraction_jsonl(std::ostream& out, std::span<const ExtractionRecord> records) {
    for (const auto& record : records) {
        out << to_jsonl_line(record) << '\n';
    }
}

std::vector<ExtractionRecord> read_extraction_jsonl(std::istream& in, std::string_view source_name) {
    std::vector<ExtractionRecord> records;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) {
            continue;
        }
        ExtractionRecord record;
        try {
            const auto parsed = nlohmann::json::parse(line);
            record.doc_id = parsed.at("doc_id").get<int>();
            for (const auto& phrase : parsed.at("phrases")) {
                record.phrases.push_back(
                    {phrase.at("text").get<std::string>(), phrase.at("score").get<double>()});
            }
        } catch (const nlohmann::json::exception& e) {
            std::ostringstream msg;
            msg << source_name << ": row " << row << ": expected {doc_id, phrases}: " << e.what();
            throw ParseError(msg.str());
        }
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<ExtractionRecord> read_extraction_jsonl_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open extraction file: " + path);
    }
    return read_extraction_jsonl(in, path);
}

} // namespace kex
