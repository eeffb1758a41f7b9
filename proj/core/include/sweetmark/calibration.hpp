#pragma once

#include "sweetmark/model.hpp"
#include "sweetmark/params.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace sweetmark {

/// One corpus position: the gating entropy H and the expected green mass
/// P_G of the delta-boosted distribution, averaged over K random partitions.
struct CalibrationSample {
    double entropy = 0.0;    // H, nats
    double green_mass = 0.0; // P_G, in [0,1]
};

/// Scans every position of every document. The averaging partitions come
/// from a dedicated seed stream derived from `calibration_seed`, never from
/// the watermark key, so calibration cannot leak it.
std::vector<CalibrationSample> collect_samples(const TokenModel& model,
                                               const std::vector<std::vector<int32_t>>& corpus,
                                               const WatermarkParams& params, int partitions,
                                               uint64_t calibration_seed);

/// Detection-signal estimate per threshold:
///   z' = E[N_h/N] * (E[N_h_G/N_h] - gamma)
/// where the first factor is the gated fraction (H > tau) and the second
/// expectation is the mean P_G over gated samples. An empty gate yields 0 so
/// an unusable threshold can never win the argmax.
double z_prime(std::span<const CalibrationSample> samples, double tau, double gamma);

struct CalibrationRow {
    double tau = 0.0;
    double frac_gated = 0.0;
    double mean_green = 0.0; // 0 when the gate is empty
    double z_prime = 0.0;
};

struct CalibrationCurve {
    std::vector<CalibrationRow> rows;
    size_t best_begin = 0; // inclusive grid indices of the best interval
    size_t best_end = 0;

    double best_tau_lo() const { return rows[best_begin].tau; }
    double best_tau_hi() const { return rows[best_end].tau; }
};

/// Evaluates z' over a sorted tau grid; the best interval is the longest
/// contiguous run attaining the maximum within 1e-12 (ties: first run).
CalibrationCurve calibrate(std::span<const CalibrationSample> samples, double gamma,
                           std::span<const double> tau_grid);

/// Evenly spaced thresholds over the gating entropy's natural domain
/// [0, ln |V|].
std::vector<double> default_tau_grid(int32_t vocab_size, int points = 64);

} // namespace sweetmark
