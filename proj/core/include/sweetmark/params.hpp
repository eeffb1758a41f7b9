#pragma once

#include "sweetmark/vocab.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace sweetmark {

/// Full green/red + thresholding configuration. tau absent selects the
/// ungated scheme (every token watermarked and scored).
struct WatermarkParams {
    double gamma = 0.25;               // green-list ratio, in (0,1)
    double delta = 3.0;                // logit boost for green tokens, >= 0
    std::optional<double> tau;         // Shannon-entropy gate (nats); absent = ungated
    uint64_t key = 0;                  // secret partition key
    double z_threshold = 4.0;          // detection cut-off, strict >
    double entropy_temperature = 1.0;  // softmax temperature for the gating entropy only

    bool gated() const { return tau.has_value(); }

    /// Range checks; throws ConfigError.
    void validate() const;

    /// floor(gamma * |V|) must land in [1, |V|-1] so both lists are
    /// non-empty; throws ConfigError otherwise.
    void bind_check(const Vocabulary& vocab) const;

    int32_t green_count(int32_t vocab_size) const;

    /// Fingerprint of everything except the key; safe to echo anywhere.
    std::string fingerprint() const;

    /// One-way-ish 32-bit redaction of the key for artifact headers.
    std::string key_fingerprint() const;
};

int32_t green_count_for(double gamma, int32_t vocab_size);

} // namespace sweetmark
