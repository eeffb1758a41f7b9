#pragma once

#include "sweetmark/generator.hpp"
#include "sweetmark/model.hpp"
#include "sweetmark/params.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace sweetmark {

enum class SampleLabel { Machine, Human };

struct ScoredSample {
    double score = 0.0; // z-score
    SampleLabel label = SampleLabel::Machine;
    int64_t length = 0;
};

/// Rank-based (Mann-Whitney) AUROC; tied scores contribute 1/2. Throws
/// UndefinedStatistic unless both classes are present.
double auroc(std::span<const ScoredSample> samples);

struct TprResult {
    double tpr = 0.0;
    double threshold = 0.0;
};

/// Smallest threshold t with empirical FPR(score > t) strictly below the
/// cap, and the TPR at that threshold.
TprResult tpr_at_fpr(std::span<const ScoredSample> samples, double fpr_cap = 0.05);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    double threshold = 0.0;
};

/// Stepwise (FPR, TPR) points from (0,0) to (1,1) for external plotting.
std::vector<RocPoint> roc_curve(std::span<const ScoredSample> samples);

struct DetectabilityRow {
    int64_t truncate_to = 0;
    double auroc = 0.0;
    int64_t n_machine = 0;
    int64_t n_human = 0;
};

/// AUROC after truncating every text to its first T tokens (shorter texts
/// participate whole). Undefined detections are dropped; a T entry with
/// fewer than min_per_class defined scores in either class is omitted.
std::vector<DetectabilityRow> detectability_at_T(
    const std::vector<std::vector<int32_t>>& machine_texts,
    const std::vector<std::vector<int32_t>>& human_texts, const TokenModel& model,
    const WatermarkParams& params, std::span<const int64_t> t_grid, int min_per_class = 20);

struct SweepPoint {
    double gamma = 0.25;
    double delta = 3.0;
    std::optional<double> tau; // absent = ungated scheme
};

struct SweepRow {
    SweepPoint point;
    double mean_z_machine = 0.0;
    double auroc = 0.0;
    double tpr_at_fpr5 = 0.0;
    double quality_proxy = 0.0;  // mean per-token log-likelihood delta vs unwatermarked
    double undefined_rate = 0.0; // dropped detections / attempted detections
    bool pareto = false;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

struct SweepConfig {
    std::vector<SweepPoint> grid;
    SamplerConfig sampler; // rng_seed is re-derived per point and sample
    int n_machine = 50;
    uint64_t harness_seed = 0;
    uint64_t key = 0;
    double z_threshold = 4.0;
    double entropy_temperature = 1.0;
};

/// Full grid evaluation: per point, generate watermarked samples, score
/// machine and human texts, and compute detection metrics plus the quality
/// proxy. The proxy is a log-likelihood delta, NOT an execution-based
/// correctness metric. Per-point seeds derive from mix64(harness_seed + index)
/// so results do not depend on evaluation order.
SweepResult sweep(const TokenModel& model, const std::vector<std::vector<int32_t>>& prompts,
                  const std::vector<std::vector<int32_t>>& human_corpus,
                  const SweepConfig& config);

/// Non-dominated rows under (quality up, auroc up).
std::vector<bool> pareto_mask(std::span<const std::pair<double, double>> quality_auroc);

/// Mean per-token log-likelihood of `tokens` under the model's raw
/// distribution (softmax at temperature 1), continuing from `prompt`.
double sequence_mean_logprob(const TokenModel& model, std::span<const int32_t> prompt,
                             std::span<const int32_t> tokens);

} // namespace sweetmark
