#include "sweetmark/params.hpp"

#include "sweetmark/errors.hpp"
#include "sweetmark/hash.hpp"

#include <bit>
#include <cmath>
#include <cstdio>

namespace sweetmark {

void WatermarkParams::validate() const {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw ConfigError("gamma must be in (0,1), got " + std::to_string(gamma));
    if (!(delta >= 0.0) || !std::isfinite(delta))
        throw ConfigError("delta must be finite and >= 0, got " + std::to_string(delta));
    if (tau && (!(*tau >= 0.0) || !std::isfinite(*tau)))
        throw ConfigError("tau must be finite and >= 0 when present");
    if (!(entropy_temperature > 0.0) || !std::isfinite(entropy_temperature))
        throw ConfigError("entropy_temperature must be finite and > 0");
    if (!std::isfinite(z_threshold))
        throw ConfigError("z_threshold must be finite");
}

int32_t green_count_for(double gamma, int32_t vocab_size) {
    return static_cast<int32_t>(std::floor(gamma * static_cast<double>(vocab_size)));
}

int32_t WatermarkParams::green_count(int32_t vocab_size) const {
    return green_count_for(gamma, vocab_size);
}

void WatermarkParams::bind_check(const Vocabulary& vocab) const {
    validate();
    const int32_t g = green_count(vocab.size());
    if (g < 1 || g > vocab.size() - 1)
        throw ConfigError("floor(gamma*|V|) = " + std::to_string(g) +
                          " leaves an empty green or red list for |V| = " +
                          std::to_string(vocab.size()));
}

namespace {

uint64_t mix_in(uint64_t h, uint64_t v) { return mix64(h ^ v); }

std::string hex32(uint64_t v) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%08llx",
                  static_cast<unsigned long long>(v & 0xFFFFFFFFULL));
    return buf;
}

} // namespace

std::string WatermarkParams::fingerprint() const {
    uint64_t h = 0x73776D2D70617231ULL;
    h = mix_in(h, std::bit_cast<uint64_t>(gamma));
    h = mix_in(h, std::bit_cast<uint64_t>(delta));
    h = mix_in(h, tau ? std::bit_cast<uint64_t>(*tau) : 0xFFFFFFFFFFFFFFFFULL);
    h = mix_in(h, std::bit_cast<uint64_t>(z_threshold));
    h = mix_in(h, std::bit_cast<uint64_t>(entropy_temperature));
    return hex32(h);
}

std::string WatermarkParams::key_fingerprint() const {
    // Truncating the mixed key to 32 bits leaves ~2^32 preimages per value;
    // the key itself is never written anywhere.
    return hex32(mix64(key ^ 0x6B65792D66707231ULL));
}

} // namespace sweetmark
