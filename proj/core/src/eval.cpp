#include "sweetmark/eval.hpp"

#include "sweetmark/detector.hpp"
#include "sweetmark/distributions.hpp"
#include "sweetmark/errors.hpp"
#include "sweetmark/hash.hpp"

#include <algorithm>
#include <cmath>

namespace sweetmark {

namespace {

std::pair<std::vector<double>, std::vector<double>> split_scores(
    std::span<const ScoredSample> samples) {
    std::vector<double> machine, human;
    for (const auto& s : samples) {
        (s.label == SampleLabel::Machine ? machine : human).push_back(s.score);
    }
    if (machine.empty() || human.empty())
        throw UndefinedStatistic("metric undefined: need at least one sample of each class");
    return {std::move(machine), std::move(human)};
}

} // namespace

double auroc(std::span<const ScoredSample> samples) {
    auto [machine, human] = split_scores(samples);
    std::sort(human.begin(), human.end());
    double wins = 0.0;
    for (const double m : machine) {
        const auto lo = std::lower_bound(human.begin(), human.end(), m);
        const auto hi = std::upper_bound(human.begin(), human.end(), m);
        wins += static_cast<double>(lo - human.begin());
        wins += 0.5 * static_cast<double>(hi - lo);
    }
    return wins / (static_cast<double>(machine.size()) * static_cast<double>(human.size()));
}

TprResult tpr_at_fpr(std::span<const ScoredSample> samples, double fpr_cap) {
    if (!(fpr_cap > 0.0 && fpr_cap <= 1.0))
        throw ConfigError("fpr cap must be in (0,1]");
    auto [machine, human] = split_scores(samples);
    std::sort(human.begin(), human.end(), std::greater<>());

    const double nh = static_cast<double>(human.size());
    // largest integer strictly below cap * n_h = allowed false positives
    auto allowed = static_cast<int64_t>(std::floor(fpr_cap * nh));
    if (static_cast<double>(allowed) >= fpr_cap * nh) --allowed;
    if (allowed < 0) allowed = 0;

    // smallest t with #{human > t} <= allowed is the (allowed+1)-th largest
    // human score: anything smaller readmits that score.
    const double threshold = human[static_cast<size_t>(allowed)];

    double tp = 0.0;
    for (const double m : machine)
        if (m > threshold) tp += 1.0;
    return {tp / static_cast<double>(machine.size()), threshold};
}

std::vector<RocPoint> roc_curve(std::span<const ScoredSample> samples) {
    auto [machine, human] = split_scores(samples);
    std::vector<double> all;
    all.reserve(machine.size() + human.size());
    all.insert(all.end(), machine.begin(), machine.end());
    all.insert(all.end(), human.begin(), human.end());
    std::sort(all.begin(), all.end(), std::greater<>());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    std::sort(machine.begin(), machine.end(), std::greater<>());
    std::sort(human.begin(), human.end(), std::greater<>());

    std::vector<RocPoint> curve;
    curve.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
    size_t mi = 0, hi = 0;
    for (const double t : all) {
        while (mi < machine.size() && machine[mi] >= t) ++mi;
        while (hi < human.size() && human[hi] >= t) ++hi;
        curve.push_back({static_cast<double>(hi) / static_cast<double>(human.size()),
                         static_cast<double>(mi) / static_cast<double>(machine.size()), t});
    }
    if (curve.back().fpr != 1.0 || curve.back().tpr != 1.0)
        curve.push_back({1.0, 1.0, -std::numeric_limits<double>::infinity()});
    return curve;
}

std::vector<DetectabilityRow> detectability_at_T(
    const std::vector<std::vector<int32_t>>& machine_texts,
    const std::vector<std::vector<int32_t>>& human_texts, const TokenModel& model,
    const WatermarkParams& params, std::span<const int64_t> t_grid, int min_per_class) {
    if (t_grid.empty()) throw ConfigError("detectability grid is empty");

    std::vector<DetectabilityRow> rows;
    for (const int64_t T : t_grid) {
        if (T < 1) throw ConfigError("truncation length must be >= 1");
        std::vector<ScoredSample> scored;
        int64_t n_machine = 0, n_human = 0;
        auto score_class = [&](const std::vector<std::vector<int32_t>>& texts,
                               SampleLabel label, int64_t& count) {
            for (const auto& text : texts) {
                if (text.empty()) continue;
                const size_t keep = std::min<size_t>(text.size(), static_cast<size_t>(T));
                const std::span<const int32_t> head(text.data(), keep);
                try {
                    const auto report = detect(model, {}, head, params);
                    scored.push_back({report.z, label, static_cast<int64_t>(keep)});
                    ++count;
                } catch (const UndefinedStatistic&) {
                }
            }
        };
        score_class(machine_texts, SampleLabel::Machine, n_machine);
        score_class(human_texts, SampleLabel::Human, n_human);
        if (n_machine < min_per_class || n_human < min_per_class) continue;
        rows.push_back({T, auroc(scored), n_machine, n_human});
    }
    return rows;
}

double sequence_mean_logprob(const TokenModel& model, std::span<const int32_t> prompt,
                             std::span<const int32_t> tokens) {
    if (tokens.empty()) throw DataError("cannot score an empty sequence");
    std::vector<int32_t> ctx;
    if (prompt.empty()) ctx.push_back(model.vocab().bos_id());
    else ctx.assign(prompt.begin(), prompt.end());

    double total = 0.0;
    for (const int32_t token : tokens) {
        const auto l = model.logits(ctx);
        total += token_logprob(l, token);
        ctx.push_back(token);
    }
    return total / static_cast<double>(tokens.size());
}

SweepResult sweep(const TokenModel& model, const std::vector<std::vector<int32_t>>& prompts,
                  const std::vector<std::vector<int32_t>>& human_corpus,
                  const SweepConfig& config) {
    if (config.grid.empty()) throw ConfigError("sweep grid is empty");
    if (config.n_machine < 1) throw ConfigError("sweep needs n_machine >= 1");
    if (human_corpus.empty()) throw DataError("sweep needs a human corpus");

    SweepResult result;
    result.rows.reserve(config.grid.size());

    for (size_t gi = 0; gi < config.grid.size(); ++gi) {
        const auto& point = config.grid[gi];
        WatermarkParams params;
        params.gamma = point.gamma;
        params.delta = point.delta;
        params.tau = point.tau;
        params.key = config.key;
        params.z_threshold = config.z_threshold;
        params.entropy_temperature = config.entropy_temperature;
        params.bind_check(model.vocab());

        const uint64_t point_seed = mix64(config.harness_seed + gi);

        std::vector<ScoredSample> scored;
        int64_t attempted = 0, undefined = 0;
        double z_sum = 0.0;
        int64_t z_count = 0;
        double wm_ll = 0.0, uw_ll = 0.0;

        static const std::vector<int32_t> kEmptyPrompt;
        for (int i = 0; i < config.n_machine; ++i) {
            const auto& prompt =
                prompts.empty() ? kEmptyPrompt : prompts[static_cast<size_t>(i) % prompts.size()];
            SamplerConfig sampler = config.sampler;
            sampler.rng_seed = mix64(point_seed + static_cast<uint64_t>(i));

            const auto wm = generate(model, prompt, params, sampler);
            const auto uw = generate_unwatermarked(model, prompt, sampler);
            wm_ll += sequence_mean_logprob(model, prompt, wm.tokens);
            uw_ll += sequence_mean_logprob(model, prompt, uw);

            ++attempted;
            try {
                const auto report = detect(model, prompt, wm.tokens, params);
                scored.push_back({report.z, SampleLabel::Machine,
                                  static_cast<int64_t>(wm.tokens.size())});
                z_sum += report.z;
                ++z_count;
            } catch (const UndefinedStatistic&) {
                ++undefined;
            }
        }
        for (const auto& text : human_corpus) {
            if (text.empty()) continue;
            ++attempted;
            try {
                const auto report = detect(model, {}, text, params);
                scored.push_back(
                    {report.z, SampleLabel::Human, static_cast<int64_t>(text.size())});
            } catch (const UndefinedStatistic&) {
                ++undefined;
            }
        }

        SweepRow row;
        row.point = point;
        row.mean_z_machine = z_count ? z_sum / static_cast<double>(z_count) : 0.0;
        row.auroc = auroc(scored);
        row.tpr_at_fpr5 = tpr_at_fpr(scored, 0.05).tpr;
        row.quality_proxy = (wm_ll - uw_ll) / static_cast<double>(config.n_machine);
        row.undefined_rate =
            attempted ? static_cast<double>(undefined) / static_cast<double>(attempted) : 0.0;
        result.rows.push_back(row);
    }

    std::vector<std::pair<double, double>> qa;
    qa.reserve(result.rows.size());
    for (const auto& r : result.rows) qa.emplace_back(r.quality_proxy, r.auroc);
    const auto mask = pareto_mask(qa);
    for (size_t i = 0; i < mask.size(); ++i) result.rows[i].pareto = mask[i];
    return result;
}

std::vector<bool> pareto_mask(std::span<const std::pair<double, double>> quality_auroc) {
    const size_t n = quality_auroc.size();
    std::vector<bool> mask(n, true);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n && mask[i]; ++j) {
            if (i == j) continue;
            const auto& [qi, ai] = quality_auroc[i];
            const auto& [qj, aj] = quality_auroc[j];
            if (qj >= qi && aj >= ai && (qj > qi || aj > ai)) mask[i] = false;
        }
    }
    return mask;
}

} // namespace sweetmark
