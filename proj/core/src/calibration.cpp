#include "sweetmark/calibration.hpp"

#include "sweetmark/distributions.hpp"
#include "sweetmark/errors.hpp"
#include "sweetmark/hash.hpp"
#include "sweetmark/partition.hpp"

#include <algorithm>
#include <cmath>

namespace sweetmark {

std::vector<CalibrationSample> collect_samples(const TokenModel& model,
                                               const std::vector<std::vector<int32_t>>& corpus,
                                               const WatermarkParams& params, int partitions,
                                               uint64_t calibration_seed) {
    params.bind_check(model.vocab());
    if (corpus.empty()) throw DataError("calibration corpus is empty");
    if (partitions < 1) throw ConfigError("partition count must be >= 1");

    const int32_t V = model.vocab().size();
    const double boost = std::exp(params.delta);

    std::vector<CalibrationSample> samples;
    std::vector<int32_t> ctx;
    uint64_t position = 0;

    for (const auto& doc : corpus) {
        ctx.clear();
        ctx.push_back(model.vocab().bos_id());
        for (const int32_t token : doc) {
            if (token < 0 || token >= V)
                throw DataError("corpus token id " + std::to_string(token) + " out of range");

            const auto l = model.logits(ctx);
            const auto probs = softmax(l, 1.0);

            CalibrationSample s;
            s.entropy = entropy_of_logits(l, params.entropy_temperature);

            // Green mass of softmax(l + delta * green) reduces to a function
            // of the pre-boost green mass Pg:
            //   e^delta * Pg / (e^delta * Pg + 1 - Pg)
            const uint64_t pos_seed = mix64(calibration_seed + position);
            double acc = 0.0;
            for (int k = 0; k < partitions; ++k) {
                const auto part = compute_partition(mix64(pos_seed + static_cast<uint64_t>(k)),
                                                    params.gamma, V);
                double pg = 0.0;
                for (int32_t id = 0; id < V; ++id)
                    if (part.is_green(id)) pg += probs[static_cast<size_t>(id)];
                acc += boost * pg / (boost * pg + (1.0 - pg));
            }
            s.green_mass = acc / static_cast<double>(partitions);

            samples.push_back(s);
            ctx.push_back(token);
            ++position;
        }
    }
    if (samples.empty()) throw DataError("calibration corpus has no positions");
    return samples;
}

double z_prime(std::span<const CalibrationSample> samples, double tau, double gamma) {
    if (samples.empty()) throw DataError("z' needs at least one sample");
    int64_t gated = 0;
    double green_sum = 0.0;
    for (const auto& s : samples) {
        if (s.entropy > tau) {
            ++gated;
            green_sum += s.green_mass;
        }
    }
    if (gated == 0) return 0.0;
    const double frac = static_cast<double>(gated) / static_cast<double>(samples.size());
    const double mean_green = green_sum / static_cast<double>(gated);
    return frac * (mean_green - gamma);
}

CalibrationCurve calibrate(std::span<const CalibrationSample> samples, double gamma,
                           std::span<const double> tau_grid) {
    if (tau_grid.empty()) throw ConfigError("tau grid is empty");
    if (!std::is_sorted(tau_grid.begin(), tau_grid.end()))
        throw ConfigError("tau grid must be sorted ascending");

    CalibrationCurve curve;
    curve.rows.reserve(tau_grid.size());
    for (const double tau : tau_grid) {
        CalibrationRow row;
        row.tau = tau;
        int64_t gated = 0;
        double green_sum = 0.0;
        for (const auto& s : samples) {
            if (s.entropy > tau) {
                ++gated;
                green_sum += s.green_mass;
            }
        }
        row.frac_gated = static_cast<double>(gated) / static_cast<double>(samples.size());
        row.mean_green = gated ? green_sum / static_cast<double>(gated) : 0.0;
        row.z_prime = gated ? row.frac_gated * (row.mean_green - gamma) : 0.0;
        curve.rows.push_back(row);
    }

    double best = curve.rows[0].z_prime;
    for (const auto& r : curve.rows) best = std::max(best, r.z_prime);

    constexpr double kTieTol = 1e-12;
    size_t run_begin = 0, run_len = 0;
    size_t best_begin = 0, best_len = 0;
    for (size_t i = 0; i <= curve.rows.size(); ++i) {
        const bool at_max = i < curve.rows.size() && best - curve.rows[i].z_prime <= kTieTol;
        if (at_max) {
            if (run_len == 0) run_begin = i;
            ++run_len;
        } else {
            if (run_len > best_len) { best_begin = run_begin; best_len = run_len; }
            run_len = 0;
        }
    }
    curve.best_begin = best_begin;
    curve.best_end = best_begin + best_len - 1;
    return curve;
}

std::vector<double> default_tau_grid(int32_t vocab_size, int points) {
    if (vocab_size < 2) throw ConfigError("tau grid needs |V| >= 2");
    if (points < 2) throw ConfigError("tau grid needs at least 2 points");
    const double hi = std::log(static_cast<double>(vocab_size));
    std::vector<double> grid(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i)
        grid[static_cast<size_t>(i)] = hi * static_cast<double>(i) / static_cast<double>(points - 1);
    return grid;
}

} // namespace sweetmark
