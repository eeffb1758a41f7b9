#pragma once

#include "sweetmark/hash.hpp"

#include <cstdint>
#include <vector>

namespace sweetmark {

/// Seed for the green/red split at one position: a keyed hash of the
/// previous token id. Detection recovers the exact split from the same key
/// and predecessor.
constexpr uint64_t seed_for(uint64_t key, int32_t prev_token) noexcept {
    return mix64(key ^ static_cast<uint64_t>(static_cast<int64_t>(prev_token) + 1));
}

/// Green/red split of the token id space. Fully determined by
/// (seed, gamma, vocab_size); recomputation is bit-identical.
class Partition {
public:
    bool is_green(int32_t id) const {
        return (bits_[static_cast<size_t>(id) >> 6] >> (id & 63)) & 1u;
    }
    int32_t green_count() const { return green_count_; }
    int32_t vocab_size() const { return vocab_size_; }

    bool operator==(const Partition&) const = default;

    friend Partition compute_partition(uint64_t seed, double gamma, int32_t vocab_size);

private:
    std::vector<uint64_t> bits_;
    int32_t green_count_ = 0;
    int32_t vocab_size_ = 0;
};

/// Fisher-Yates shuffle of [0, vocab_size) driven by the counter stream
/// mix64(seed + i); the first floor(gamma*|V|) shuffled ids are green.
/// Throws ConfigError when floor(gamma*|V|) falls outside [1, |V|-1].
Partition compute_partition(uint64_t seed, double gamma, int32_t vocab_size);

} // namespace sweetmark
