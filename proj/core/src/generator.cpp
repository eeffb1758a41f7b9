#include "sweetmark/generator.hpp"

#include "sweetmark/distributions.hpp"
#include "sweetmark/errors.hpp"
#include "sweetmark/hash.hpp"
#include "sweetmark/partition.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

namespace sweetmark {

void SamplerConfig::validate() const {
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw ConfigError("sampler temperature must be finite and > 0");
    if (!(top_p > 0.0 && top_p <= 1.0))
        throw ConfigError("top_p must be in (0,1], got " + std::to_string(top_p));
    if (max_tokens <= 0)
        throw ConfigError("max_tokens must be > 0, got " + std::to_string(max_tokens));
}

std::vector<int32_t> GenerationTrace::tokens() const {
    std::vector<int32_t> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back(s.token);
    return out;
}

namespace {

struct SampleOutcome {
    int32_t token;
    double logprob;
};

// Nucleus sampling over already-boosted logits. The candidate order is
// (prob desc, id asc) so ties resolve identically everywhere.
SampleOutcome sample_token(const std::vector<double>& boosted, const SamplerConfig& sampler,
                           CounterRng& rng) {
    const auto probs = softmax(boosted, sampler.temperature);
    const auto n = static_cast<int32_t>(probs.size());

    std::vector<int32_t> order(static_cast<size_t>(n));
    for (int32_t i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
        const double pa = probs[static_cast<size_t>(a)];
        const double pb = probs[static_cast<size_t>(b)];
        if (pa != pb) return pa > pb;
        return a < b;
    });

    size_t keep = order.size();
    double mass = 1.0;
    if (sampler.top_p < 1.0) {
        double cum = 0.0;
        for (size_t i = 0; i < order.size(); ++i) {
            cum += probs[static_cast<size_t>(order[i])];
            if (cum >= sampler.top_p) { // boundary token included
                keep = i + 1;
                mass = cum;
                break;
            }
        }
    }

    const double u = rng.unit() * mass;
    double cum = 0.0;
    size_t pick = keep - 1;
    for (size_t i = 0; i < keep; ++i) {
        cum += probs[static_cast<size_t>(order[i])];
        if (cum > u) { pick = i; break; }
    }
    const int32_t token = order[pick];
    return {token, std::log(probs[static_cast<size_t>(token)] / mass)};
}

GenerationResult run_sampler(const TokenModel& model, std::span<const int32_t> prompt,
                             const WatermarkParams& params, const SamplerConfig& sampler,
                             bool watermark, bool record_logits) {
    sampler.validate();
    params.bind_check(model.vocab());
    const int32_t V = model.vocab().size();
    for (const int32_t id : prompt)
        if (id < 0 || id >= V)
            throw ConfigError("prompt token id " + std::to_string(id) +
                              " outside the model vocabulary");

    GenerationResult result;
    auto& trace = result.trace;
    trace.prompt.assign(prompt.begin(), prompt.end());
    trace.gamma = params.gamma;
    trace.delta = params.delta;
    trace.tau = params.tau;
    trace.z_threshold = params.z_threshold;
    trace.entropy_temperature = params.entropy_temperature;
    trace.params_fp = params.fingerprint();
    trace.key_fp = params.key_fingerprint();
    trace.vocab_hash = model.vocab().content_hash();
    trace.sampler = sampler;
    trace.logits_recorded = record_logits;

    // Empty prompt: the <bos> sentinel is both the first model context and
    // the first partition predecessor. Detection mirrors this exactly.
    std::vector<int32_t> ctx;
    if (prompt.empty()) ctx.push_back(model.vocab().bos_id());
    else ctx.assign(prompt.begin(), prompt.end());

    CounterRng rng(sampler.rng_seed);
    std::unordered_map<int32_t, Partition> partition_cache;

    trace.steps.reserve(static_cast<size_t>(sampler.max_tokens));
    result.tokens.reserve(static_cast<size_t>(sampler.max_tokens));

    for (int t = 0; t < sampler.max_tokens; ++t) {
        const auto logits = model.logits(ctx);
        const double entropy = entropy_of_logits(logits, params.entropy_temperature);
        const bool gate_open = !params.gated() || entropy > *params.tau;
        const bool apply = watermark && gate_open;

        TraceStep step;
        step.entropy = entropy;
        step.watermarked = apply;
        if (record_logits) step.logits = logits;

        const Partition* part = nullptr;
        std::vector<double> boosted;
        const std::vector<double>* sample_from = &logits;
        if (apply) {
            const int32_t prev = ctx.back();
            auto it = partition_cache.find(prev);
            if (it == partition_cache.end())
                it = partition_cache
                         .emplace(prev, compute_partition(seed_for(params.key, prev),
                                                          params.gamma, V))
                         .first;
            part = &it->second;
            boosted = logits;
            for (int32_t id = 0; id < V; ++id)
                if (part->is_green(id)) boosted[static_cast<size_t>(id)] += params.delta;
            sample_from = &boosted;
        }

        const auto [token, logprob] = sample_token(*sample_from, sampler, rng);
        step.token = token;
        step.logprob = logprob;
        if (apply) step.green = part->is_green(token);

        trace.steps.push_back(std::move(step));
        result.tokens.push_back(token);
        ctx.push_back(token);
    }
    return result;
}

} // namespace

GenerationResult generate(const TokenModel& model, std::span<const int32_t> prompt,
                          const WatermarkParams& params, const SamplerConfig& sampler,
                          bool record_logits) {
    return run_sampler(model, prompt, params, sampler, /*watermark=*/true, record_logits);
}

std::vector<int32_t> generate_unwatermarked(const TokenModel& model,
                                            std::span<const int32_t> prompt,
                                            const SamplerConfig& sampler) {
    WatermarkParams params; // defaults are irrelevant with the watermark off
    return run_sampler(model, prompt, params, sampler, /*watermark=*/false,
                       /*record_logits=*/false)
        .tokens;
}

namespace {

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

} // namespace

void GenerationTrace::save_jsonl(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write trace file: " + path.string());

    nlohmann::json header{
        {"format", kFormatName},
        {"version", 1},
        {"gamma", gamma},
        {"delta", delta},
        {"tau", tau ? nlohmann::json(*tau) : nlohmann::json(nullptr)},
        {"z_threshold", z_threshold},
        {"entropy_temperature", entropy_temperature},
        {"params_fp", params_fp},
        {"key_fp", key_fp},
        {"vocab_hash", hex64(vocab_hash)},
        {"sampler",
         {{"temperature", sampler.temperature},
          {"top_p", sampler.top_p},
          {"max_tokens", sampler.max_tokens},
          {"rng_seed", sampler.rng_seed}}},
        {"prompt", prompt},
        {"logits_recorded", logits_recorded},
    };
    out << header.dump() << '\n';

    for (size_t t = 0; t < steps.size(); ++t) {
        const auto& s = steps[t];
        nlohmann::json row{
            {"t", t},
            {"token", s.token},
            {"H", s.entropy},
            {"wm", s.watermarked},
            {"green", s.green ? nlohmann::json(*s.green) : nlohmann::json(nullptr)},
            {"logp", s.logprob},
        };
        if (logits_recorded && s.logits) row["logits"] = *s.logits;
        out << row.dump() << '\n';
    }
    if (!out) throw DataError("failed writing trace file: " + path.string());
}

GenerationTrace GenerationTrace::load_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open trace file: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw DataError("empty trace file: " + path.string());

    GenerationTrace trace;
    try {
        const auto header = nlohmann::json::parse(line);
        if (header.value("format", "") != kFormatName)
            throw DataError("not a trace file: " + path.string());
        trace.gamma = header.at("gamma").get<double>();
        trace.delta = header.at("delta").get<double>();
        if (!header.at("tau").is_null()) trace.tau = header.at("tau").get<double>();
        trace.z_threshold = header.at("z_threshold").get<double>();
        trace.entropy_temperature = header.at("entropy_temperature").get<double>();
        trace.params_fp = header.at("params_fp").get<std::string>();
        trace.key_fp = header.at("key_fp").get<std::string>();
        trace.vocab_hash = std::stoull(header.at("vocab_hash").get<std::string>(), nullptr, 16);
        const auto& sj = header.at("sampler");
        trace.sampler.temperature = sj.at("temperature").get<double>();
        trace.sampler.top_p = sj.at("top_p").get<double>();
        trace.sampler.max_tokens = sj.at("max_tokens").get<int>();
        trace.sampler.rng_seed = sj.at("rng_seed").get<uint64_t>();
        trace.prompt = header.at("prompt").get<std::vector<int32_t>>();
        trace.logits_recorded = header.at("logits_recorded").get<bool>();

        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto row = nlohmann::json::parse(line);
            TraceStep s;
            s.token = row.at("token").get<int32_t>();
            s.entropy = row.at("H").get<double>();
            s.watermarked = row.at("wm").get<bool>();
            if (!row.at("green").is_null()) s.green = row.at("green").get<bool>();
            s.logprob = row.at("logp").get<double>();
            if (row.contains("logits")) s.logits = row.at("logits").get<std::vector<double>>();
            trace.steps.push_back(std::move(s));
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed trace file " + path.string() + ": " + e.what());
    }
    return trace;
}

} // namespace sweetmark
