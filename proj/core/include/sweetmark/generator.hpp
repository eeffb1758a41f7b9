#pragma once

#include "sweetmark/model.hpp"
#include "sweetmark/params.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace sweetmark {

struct SamplerConfig {
    double temperature = 1.0;
    double top_p = 1.0;     // nucleus mass; 1.0 keeps the full distribution
    int max_tokens = 200;
    uint64_t rng_seed = 0;

    void validate() const;
};

struct TraceStep {
    int32_t token = 0;
    double entropy = 0.0;             // H_t in nats
    bool watermarked = false;         // gate passed (or ungated mode)
    std::optional<bool> green;        // set iff watermarked
    double logprob = 0.0;             // log-prob under the actual sampling distribution
    std::optional<std::vector<double>> logits; // raw model logits, when recorded
};

/// Audit record of one generation; also the replay-model input when logits
/// are recorded. Serialized as JSONL: one header object, then one object
/// per step. The secret key never appears; only its fingerprint does.
struct GenerationTrace {
    static constexpr std::string_view kFormatName = "sweetmark-trace";

    std::vector<int32_t> prompt;
    std::vector<TraceStep> steps;

    double gamma = 0.25;
    double delta = 3.0;
    std::optional<double> tau;
    double z_threshold = 4.0;
    double entropy_temperature = 1.0;
    std::string params_fp;
    std::string key_fp;
    uint64_t vocab_hash = 0;
    SamplerConfig sampler;
    bool logits_recorded = false;

    std::vector<int32_t> tokens() const;

    void save_jsonl(const std::filesystem::path& path) const;
    static GenerationTrace load_jsonl(const std::filesystem::path& path);
};

struct GenerationResult {
    std::vector<int32_t> tokens;
    GenerationTrace trace;
};

/// Watermarked sampling loop: per step, compute logits and the gating
/// entropy; when the gate passes, boost green logits by delta before
/// temperature scaling and nucleus truncation. Deterministic in all inputs.
GenerationResult generate(const TokenModel& model, std::span<const int32_t> prompt,
                          const WatermarkParams& params, const SamplerConfig& sampler,
                          bool record_logits = false);

/// Same sampling loop with the watermark disabled; the negative-class and
/// quality baseline. Emits exactly sampler.max_tokens tokens.
std::vector<int32_t> generate_unwatermarked(const TokenModel& model,
                                            std::span<const int32_t> prompt,
                                            const SamplerConfig& sampler);

} // namespace sweetmark
