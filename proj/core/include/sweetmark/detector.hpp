#pragma once

#include "sweetmark/model.hpp"
#include "sweetmark/params.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace sweetmark {

/// One-sided test statistic for watermark presence:
/// (n_green - gamma * n_scored) / sqrt(n_scored * gamma * (1 - gamma)).
/// Throws UndefinedStatistic when n_scored == 0.
double z_score(int64_t n_green, int64_t n_scored, double gamma);

enum class PromptMode { Gold, GeneralAveraged, None };

std::string_view prompt_mode_name(PromptMode mode);

struct TokenAnnotation {
    int32_t token = 0;
    double entropy = 0.0;
    bool gated = false;
    std::optional<bool> green; // set iff gated
};

struct DetectionReport {
    int64_t n = 0;     // scored positions
    int64_t n_h = 0;   // gated positions
    int64_t n_h_g = 0; // green among gated
    double z = 0.0;
    bool verdict = false; // z strictly above the threshold
    PromptMode prompt_mode = PromptMode::None;
    std::vector<TokenAnnotation> annotations;

    // config echo (key redacted to its fingerprint)
    double gamma = 0.25;
    std::optional<double> tau;
    double z_threshold = 4.0;
    std::string params_fp;
    std::string key_fp;

    nlohmann::json to_json() const;
};

/// Recomputes the gating entropy and the green/red split at every position
/// of `text` and tallies green hits among gated tokens. Scoring starts at
/// t = 0 with the last prompt token (or <bos>) as predecessor, mirroring
/// generation exactly.
DetectionReport detect(const TokenModel& model, std::span<const int32_t> prompt,
                       std::span<const int32_t> text, const WatermarkParams& params);

/// Prompt-free detection: one sub-detection per candidate prompt, final z is
/// the arithmetic mean of the per-prompt z-scores. Undefined sub-detections
/// are dropped; all dropped raises UndefinedStatistic.
DetectionReport detect_with_general_prompts(const TokenModel& model,
                                            const std::vector<std::vector<int32_t>>& prompts,
                                            std::span<const int32_t> text,
                                            const WatermarkParams& params);

/// detect() with the gating entropy taken from a cheaper surrogate model;
/// the green/red recovery needs only the key and is model-independent.
DetectionReport detect_with_surrogate(const TokenModel& gen_model, const TokenModel& surrogate,
                                      std::span<const int32_t> prompt,
                                      std::span<const int32_t> text,
                                      const WatermarkParams& params);

} // namespace sweetmark
