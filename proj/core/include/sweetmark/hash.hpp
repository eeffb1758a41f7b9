#pragma once

#include <cstdint>
#include <string_view>

namespace sweetmark {

/// Fixed 64-bit mixing finalizer (splitmix64). Every seed derivation,
/// shuffle and sampling stream in the toolkit goes through this function,
/// so results are bit-stable across platforms.
constexpr uint64_t mix64(uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Counter-based random stream: the i-th output is mix64(seed + i).
/// Replayable from (seed, counter); no hidden state beyond the counter.
class CounterRng {
public:
    explicit constexpr CounterRng(uint64_t seed) noexcept : seed_(seed) {}

    constexpr uint64_t next() noexcept { return mix64(seed_ + counter_++); }

    /// Uniform draw in [0, n). Rejection keeps the draw unbiased for any n.
    constexpr uint64_t below(uint64_t n) noexcept {
        const uint64_t min = (0 - n) % n; // 2^64 mod n
        for (;;) {
            const uint64_t u = next();
            if (u >= min) return u % n;
        }
    }

    /// Uniform double in [0, 1) with 53 bits of precision.
    constexpr double unit() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    constexpr uint64_t seed() const noexcept { return seed_; }
    constexpr uint64_t counter() const noexcept { return counter_; }

private:
    uint64_t seed_;
    uint64_t counter_ = 0;
};

/// FNV-1a over raw bytes; used for content fingerprints of vocab files
/// and parameter sets (never for partition seeding).
constexpr uint64_t fnv1a64(std::string_view bytes, uint64_t h = 0xCBF29CE484222325ULL) noexcept {
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace sweetmark
