#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sweetmark {

/// Derived constants of the z-score lower bounds:
///   alpha   = e^delta / (1 + (e^delta - 1) * gamma)
///   modulus = (1 - gamma)(e^delta - 1) / (1 + (e^delta - 1) * gamma)
/// with the algebraic identity 1 + modulus == alpha.
struct BoundParams {
    double gamma = 0.0;
    double delta = 0.0;
    double alpha = 1.0;
    double modulus = 0.0;

    static BoundParams from(double gamma, double delta);
};

/// S(p, m) = sum_k p_k / (1 + m * p_k). Ranges over
/// [1/(1+m), 1/(1+m/|V|)], the extremes at one-hot and uniform p.
double spike_entropy(std::span<const double> p, double modulus);

/// Lower bound on the probability that a delta-boosted sample lands in the
/// green list, over the randomness of the partition: gamma * alpha * S(p, modulus).
double green_prob_lower_bound(std::span<const double> p, double gamma, double delta);

/// Per-token spike entropies with a spike-entropy threshold. This threshold
/// (tau_spike) is deliberately a different named quantity from the
/// operational Shannon-entropy tau; the two are never converted.
/// Gating keeps tokens with spike >= tau_spike.
struct EntropyProfile {
    std::vector<double> spikes;
    double tau_spike = 0.0;

    int64_t n() const { return static_cast<int64_t>(spikes.size()); }
    int64_t n_high() const;
    int64_t n_low() const { return n() - n_high(); }
    double mean_all() const;
    double mean_high() const; // throws UndefinedStatistic when n_high() == 0
};

/// z >= gamma * sqrt(N) * (alpha * S_mean - 1) / sqrt(gamma * (1 - gamma)),
/// over the whole profile.
double wllm_z_lower_bound(const EntropyProfile& profile, double gamma, double delta);

/// Same bound restricted to gated tokens; throws UndefinedStatistic when
/// nothing is gated.
double sweet_z_lower_bound(const EntropyProfile& profile, double gamma, double delta);

enum class AssumptionStatus {
    Holds,
    Fails,
    Inapplicable, // alpha * mean_high <= 1: the ratio in the bound is undefined
};

/// Low-entropy-ratio assumption: N_l/N <= 1 - ((alpha*S_mean - 1)/(alpha*S_high_mean - 1))^2.
/// Whenever it holds, the gated bound dominates the ungated one.
AssumptionStatus theorem1_assumption(const EntropyProfile& profile, double gamma, double delta);

/// Boolean view of theorem1_assumption; throws ConfigError on Inapplicable
/// so the undecidable case is never silently treated as false.
bool theorem1_assumption_holds(const EntropyProfile& profile, double gamma, double delta);

} // namespace sweetmark
