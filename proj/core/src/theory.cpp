#include "sweetmark/theory.hpp"

#include "sweetmark/errors.hpp"

#include <cmath>

namespace sweetmark {

BoundParams BoundParams::from(double gamma, double delta) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw ConfigError("gamma must be in (0,1)");
    if (!(delta >= 0.0) || !std::isfinite(delta))
        throw ConfigError("delta must be finite and >= 0");
    BoundParams b;
    b.gamma = gamma;
    b.delta = delta;
    const double ed = std::exp(delta);
    const double denom = 1.0 + (ed - 1.0) * gamma;
    b.alpha = ed / denom;
    b.modulus = (1.0 - gamma) * (ed - 1.0) / denom;
    return b;
}

double spike_entropy(std::span<const double> p, double modulus) {
    if (!(modulus >= 0.0))
        throw ConfigError("spike-entropy modulus must be >= 0");
    double s = 0.0;
    for (const double x : p) s += x / (1.0 + modulus * x);
    return s;
}

double green_prob_lower_bound(std::span<const double> p, double gamma, double delta) {
    const auto b = BoundParams::from(gamma, delta);
    return gamma * b.alpha * spike_entropy(p, b.modulus);
}

int64_t EntropyProfile::n_high() const {
    int64_t count = 0;
    for (const double s : spikes)
        if (s >= tau_spike) ++count;
    return count;
}

double EntropyProfile::mean_all() const {
    if (spikes.empty()) throw UndefinedStatistic("empty entropy profile");
    double sum = 0.0;
    for (const double s : spikes) sum += s;
    return sum / static_cast<double>(spikes.size());
}

double EntropyProfile::mean_high() const {
    double sum = 0.0;
    int64_t count = 0;
    for (const double s : spikes) {
        if (s >= tau_spike) { sum += s; ++count; }
    }
    if (count == 0)
        throw UndefinedStatistic("no spike entropies at or above tau_spike");
    return sum / static_cast<double>(count);
}

namespace {

double bound_from(double n, double mean, const BoundParams& b) {
    return b.gamma * std::sqrt(n) * (b.alpha * mean - 1.0) /
           std::sqrt(b.gamma * (1.0 - b.gamma));
}

} // namespace

double wllm_z_lower_bound(const EntropyProfile& profile, double gamma, double delta) {
    const auto b = BoundParams::from(gamma, delta);
    return bound_from(static_cast<double>(profile.n()), profile.mean_all(), b);
}

double sweet_z_lower_bound(const EntropyProfile& profile, double gamma, double delta) {
    const auto b = BoundParams::from(gamma, delta);
    const int64_t nh = profile.n_high();
    if (nh == 0)
        throw UndefinedStatistic("gated z lower bound undefined: no spike entropies above tau_spike");
    return bound_from(static_cast<double>(nh), profile.mean_high(), b);
}

AssumptionStatus theorem1_assumption(const EntropyProfile& profile, double gamma, double delta) {
    const auto b = BoundParams::from(gamma, delta);
    const double mean_high = profile.mean_high(); // throws when nothing is gated
    const double mean_all = profile.mean_all();
    if (b.alpha * mean_high <= 1.0) return AssumptionStatus::Inapplicable;

    const double ratio = (b.alpha * mean_all - 1.0) / (b.alpha * mean_high - 1.0);
    const double lhs =
        static_cast<double>(profile.n_low()) / static_cast<double>(profile.n());
    return lhs <= 1.0 - ratio * ratio ? AssumptionStatus::Holds : AssumptionStatus::Fails;
}

bool theorem1_assumption_holds(const EntropyProfile& profile, double gamma, double delta) {
    const auto status = theorem1_assumption(profile, gamma, delta);
    if (status == AssumptionStatus::Inapplicable)
        throw ConfigError("assumption inapplicable: alpha * mean gated spike entropy <= 1");
    return status == AssumptionStatus::Holds;
}

} // namespace sweetmark
