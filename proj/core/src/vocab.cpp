#include "sweetmark/vocab.hpp"

#include "sweetmark/errors.hpp"
#include "sweetmark/hash.hpp"

#include <fstream>

namespace sweetmark {

namespace {

uint64_t hash_tokens(const std::vector<std::string>& tokens) {
    // Length-prefix each token so ["ab","c"] and ["a","bc"] differ.
    uint64_t h = 0xCBF29CE484222325ULL;
    for (const auto& t : tokens) {
        const uint64_t n = t.size();
        char len[8];
        for (int i = 0; i < 8; ++i) len[i] = static_cast<char>((n >> (8 * i)) & 0xFF);
        h = fnv1a64(std::string_view(len, 8), h);
        h = fnv1a64(t, h);
    }
    return h;
}

} // namespace

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
    if (tokens.size() < 2)
        throw ConfigError("vocabulary needs at least 2 tokens, got " + std::to_string(tokens.size()));

    Vocabulary v;
    v.tokens_ = std::move(tokens);
    v.ids_.reserve(v.tokens_.size());
    for (int32_t i = 0; i < v.size(); ++i) {
        auto [it, inserted] = v.ids_.emplace(v.tokens_[i], i);
        if (!inserted)
            throw ConfigError("duplicate vocabulary token: '" + v.tokens_[i] + "'");
    }
    v.unk_id_ = v.id_of(kUnkToken);
    v.bos_id_ = v.id_of(kBosToken);
    if (v.unk_id_ < 0 || v.bos_id_ < 0)
        throw ConfigError("vocabulary must contain the '<unk>' and '<bos>' tokens");
    v.content_hash_ = hash_tokens(v.tokens_);
    return v;
}

Vocabulary Vocabulary::build(const std::vector<std::vector<std::string>>& documents) {
    std::vector<std::string> tokens{std::string(kUnkToken), std::string(kBosToken)};
    std::unordered_map<std::string, bool> seen;
    seen.emplace(tokens[0], true);
    seen.emplace(tokens[1], true);
    for (const auto& doc : documents) {
        for (const auto& tok : doc) {
            if (seen.emplace(tok, true).second) tokens.push_back(tok);
        }
    }
    return from_tokens(std::move(tokens));
}

const std::string& Vocabulary::token(int32_t id) const {
    if (id < 0 || id >= size())
        throw ConfigError("token id " + std::to_string(id) + " out of range [0," +
                          std::to_string(size()) + ")");
    return tokens_[static_cast<size_t>(id)];
}

int32_t Vocabulary::id_of(std::string_view token) const {
    auto it = ids_.find(std::string(token));
    return it == ids_.end() ? -1 : it->second;
}

int32_t Vocabulary::id_or_unk(std::string_view token) const {
    const int32_t id = id_of(token);
    return id < 0 ? unk_id_ : id;
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open vocabulary file: " + path.string());

    std::string line;
    if (!std::getline(in, line) || line != kFileHeader)
        throw DataError("bad vocabulary header in " + path.string() +
                        " (expected '" + std::string(kFileHeader) + "')");

    std::vector<std::string> tokens;
    while (std::getline(in, line)) {
        // Tokens containing newlines are escaped on save.
        std::string tok;
        tok.reserve(line.size());
        for (size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '\\' && i + 1 < line.size()) {
                const char c = line[i + 1];
                if (c == 'n') { tok += '\n'; ++i; continue; }
                if (c == 'r') { tok += '\r'; ++i; continue; }
                if (c == '\\') { tok += '\\'; ++i; continue; }
            }
            tok += line[i];
        }
        tokens.push_back(std::move(tok));
    }
    return from_tokens(std::move(tokens));
}

void Vocabulary::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write vocabulary file: " + path.string());
    out << kFileHeader << '\n';
    for (const auto& tok : tokens_) {
        for (const char c : tok) {
            switch (c) {
                case '\n': out << "\\n"; break;
                case '\r': out << "\\r"; break;
                case '\\': out << "\\\\"; break;
                default: out << c;
            }
        }
        out << '\n';
    }
    if (!out) throw DataError("failed writing vocabulary file: " + path.string());
}

} // namespace sweetmark
