#include "sweetmark/detector.hpp"

#include "sweetmark/distributions.hpp"
#include "sweetmark/errors.hpp"
#include "sweetmark/partition.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <unordered_map>

namespace sweetmark {

double z_score(int64_t n_green, int64_t n_scored, double gamma) {
    if (n_scored <= 0)
        throw UndefinedStatistic("z-score undefined: no scored tokens");
    if (n_green < 0 || n_green > n_scored)
        throw ConfigError("green count " + std::to_string(n_green) +
                          " outside [0, " + std::to_string(n_scored) + "]");
    if (!(gamma > 0.0 && gamma < 1.0))
        throw ConfigError("gamma must be in (0,1)");
    const double nh = static_cast<double>(n_scored);
    return (static_cast<double>(n_green) - gamma * nh) / std::sqrt(nh * gamma * (1.0 - gamma));
}

std::string_view prompt_mode_name(PromptMode mode) {
    switch (mode) {
        case PromptMode::Gold: return "gold";
        case PromptMode::GeneralAveraged: return "general-averaged";
        case PromptMode::None: return "none";
    }
    return "unknown";
}

DetectionReport detect(const TokenModel& model, std::span<const int32_t> prompt,
                       std::span<const int32_t> text, const WatermarkParams& params) {
    params.bind_check(model.vocab());
    if (text.empty()) throw DataError("detection text is empty");
    const int32_t V = model.vocab().size();
    for (const int32_t id : prompt)
        if (id < 0 || id >= V)
            throw ConfigError("prompt token id " + std::to_string(id) +
                              " outside the model vocabulary");
    for (const int32_t id : text)
        if (id < 0 || id >= V)
            throw ConfigError("text token id " + std::to_string(id) +
                              " outside the model vocabulary");

    DetectionReport report;
    report.prompt_mode = prompt.empty() ? PromptMode::None : PromptMode::Gold;
    report.gamma = params.gamma;
    report.tau = params.tau;
    report.z_threshold = params.z_threshold;
    report.params_fp = params.fingerprint();
    report.key_fp = params.key_fingerprint();

    std::vector<int32_t> ctx;
    if (prompt.empty()) ctx.push_back(model.vocab().bos_id());
    else ctx.assign(prompt.begin(), prompt.end());
    ctx.reserve(ctx.size() + text.size());

    std::unordered_map<int32_t, Partition> partition_cache;
    report.annotations.reserve(text.size());

    for (const int32_t token : text) {
        const double entropy = entropy_at(model, ctx, params.entropy_temperature);
        const bool gated = !params.gated() || entropy > *params.tau;

        TokenAnnotation ann;
        ann.token = token;
        ann.entropy = entropy;
        ann.gated = gated;
        if (gated) {
            const int32_t prev = ctx.back();
            auto it = partition_cache.find(prev);
            if (it == partition_cache.end())
                it = partition_cache
                         .emplace(prev, compute_partition(seed_for(params.key, prev),
                                                          params.gamma, V))
                         .first;
            const bool green = it->second.is_green(token);
            ann.green = green;
            report.n_h++;
            if (green) report.n_h_g++;
        }
        report.annotations.push_back(ann);
        report.n++;
        ctx.push_back(token);
    }

    if (report.n_h == 0)
        throw UndefinedStatistic("no tokens above the entropy threshold; statistic undefined");
    report.z = z_score(report.n_h_g, report.n_h, params.gamma);
    report.verdict = report.z > params.z_threshold;
    return report;
}

DetectionReport detect_with_general_prompts(const TokenModel& model,
                                            const std::vector<std::vector<int32_t>>& prompts,
                                            std::span<const int32_t> text,
                                            const WatermarkParams& params) {
    if (prompts.empty()) throw ConfigError("general-prompt detection needs at least one prompt");

    std::optional<DetectionReport> first;
    double z_sum = 0.0;
    int defined = 0;
    for (const auto& prompt : prompts) {
        try {
            DetectionReport r = detect(model, prompt, text, params);
            z_sum += r.z;
            ++defined;
            if (!first) first = std::move(r);
        } catch (const UndefinedStatistic&) {
            // this prompt contributes nothing
        }
    }
    if (defined == 0)
        throw UndefinedStatistic("all general-prompt sub-detections were undefined");

    DetectionReport report = std::move(*first);
    report.z = z_sum / static_cast<double>(defined);
    report.verdict = report.z > params.z_threshold;
    report.prompt_mode = PromptMode::GeneralAveraged;
    return report;
}

DetectionReport detect_with_surrogate(const TokenModel& gen_model, const TokenModel& surrogate,
                                      std::span<const int32_t> prompt,
                                      std::span<const int32_t> text,
                                      const WatermarkParams& params) {
    if (gen_model.vocab().content_hash() != surrogate.vocab().content_hash())
        throw ConfigError("surrogate model must share the generator vocabulary");
    return detect(surrogate, prompt, text, params);
}

nlohmann::json DetectionReport::to_json() const {
    nlohmann::json ann = nlohmann::json::array();
    for (const auto& a : annotations) {
        ann.push_back({{"token", a.token},
                       {"H", a.entropy},
                       {"gated", a.gated},
                       {"green", a.green ? nlohmann::json(*a.green) : nlohmann::json(nullptr)}});
    }
    return nlohmann::json{
        {"n", n},
        {"n_h", n_h},
        {"n_h_g", n_h_g},
        {"z", z},
        {"verdict", verdict},
        {"prompt_mode", std::string(prompt_mode_name(prompt_mode))},
        {"gamma", gamma},
        {"tau", tau ? nlohmann::json(*tau) : nlohmann::json(nullptr)},
        {"z_threshold", z_threshold},
        {"params_fp", params_fp},
        {"key_fp", key_fp},
        {"annotations", std::move(ann)},
    };
}

} // namespace sweetmark
