#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace sweetmark {

/// Reads a JSONL corpus: one object per line, text under the "text" field.
/// Blank lines are skipped; anything else malformed raises DataError.
std::vector<std::string> read_jsonl_texts(const std::filesystem::path& path);

void write_jsonl_texts(const std::filesystem::path& path,
                       const std::vector<std::string>& texts);

/// Minimal RFC-4180 writer: fields containing commas, quotes or newlines are
/// quoted; records end with CRLF. Numbers are written with shortest
/// round-trip formatting.
class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path);
    ~CsvWriter();

    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void write_row(const std::vector<std::string>& fields);

    static std::string field(double value);
    static std::string field(int64_t value);
    static std::string field(uint64_t value);

private:
    struct Impl;
    Impl* impl_;
};

std::string format_double(double value);

} // namespace sweetmark
