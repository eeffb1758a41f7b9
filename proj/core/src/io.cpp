#include "sweetmark/io.hpp"

#include "sweetmark/errors.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <fstream>

namespace sweetmark {

std::vector<std::string> read_jsonl_texts(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open corpus file: " + path.string());
    std::vector<std::string> texts;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            const auto obj = nlohmann::json::parse(line);
            texts.push_back(obj.at("text").get<std::string>());
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(lineno) +
                            ": bad JSONL record: " + e.what());
        }
    }
    return texts;
}

void write_jsonl_texts(const std::filesystem::path& path,
                       const std::vector<std::string>& texts) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write corpus file: " + path.string());
    for (const auto& t : texts) out << nlohmann::json{{"text", t}}.dump() << '\n';
    if (!out) throw DataError("failed writing corpus file: " + path.string());
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

struct CsvWriter::Impl {
    std::ofstream out;
};

CsvWriter::CsvWriter(const std::filesystem::path& path) : impl_(new Impl) {
    impl_->out.open(path, std::ios::binary);
    if (!impl_->out) {
        delete impl_;
        throw DataError("cannot write csv file: " + path.string());
    }
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::write_row(const std::vector<std::string>& fields) {
    auto& out = impl_->out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        const auto& f = fields[i];
        if (f.find_first_of(",\"\r\n") != std::string::npos) {
            out << '"';
            for (const char c : f) {
                if (c == '"') out << '"';
                out << c;
            }
            out << '"';
        } else {
            out << f;
        }
    }
    out << "\r\n";
    if (!out) throw DataError("failed writing csv row");
}

std::string CsvWriter::field(double value) { return format_double(value); }
std::string CsvWriter::field(int64_t value) { return std::to_string(value); }
std::string CsvWriter::field(uint64_t value) { return std::to_string(value); }

} // namespace sweetmark
