#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sweetmark {

/// Dense 0-based token id space. The vocabulary must contain the literal
/// "<unk>" and "<bos>" entries; the file format has no metadata slots, so
/// the specials are resolved by their spelling.
class Vocabulary {
public:
    static constexpr std::string_view kFileHeader = "#sweetmark-vocab v1";
    static constexpr std::string_view kUnkToken = "<unk>";
    static constexpr std::string_view kBosToken = "<bos>";

    /// Validates density, uniqueness and the presence of the specials.
    static Vocabulary from_tokens(std::vector<std::string> tokens);

    /// Specials first, then distinct tokens in first-seen order.
    static Vocabulary build(const std::vector<std::vector<std::string>>& documents);

    static Vocabulary load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    int32_t size() const { return static_cast<int32_t>(tokens_.size()); }
    const std::string& token(int32_t id) const;

    /// Returns the id or -1 when the token is not in the vocabulary.
    int32_t id_of(std::string_view token) const;
    int32_t id_or_unk(std::string_view token) const;

    int32_t unk_id() const { return unk_id_; }
    int32_t bos_id() const { return bos_id_; }

    /// Content fingerprint; stable across processes and platforms.
    uint64_t content_hash() const { return content_hash_; }

private:
    Vocabulary() = default;

    std::vector<std::string> tokens_;
    std::unordered_map<std::string, int32_t> ids_;
    int32_t unk_id_ = -1;
    int32_t bos_id_ = -1;
    uint64_t content_hash_ = 0;
};

} // namespace sweetmark
