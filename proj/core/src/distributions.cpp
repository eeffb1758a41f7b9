#include "sweetmark/distributions.hpp"

#include "sweetmark/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sweetmark {

std::vector<double> softmax(std::span<const double> logits, double temperature) {
    if (!(temperature > 0.0))
        throw ConfigError("softmax temperature must be > 0");
    const double max = *std::max_element(logits.begin(), logits.end());
    std::vector<double> p(logits.size());
    double sum = 0.0;
    for (size_t i = 0; i < logits.size(); ++i) {
        p[i] = std::exp((logits[i] - max) / temperature);
        sum += p[i];
    }
    for (auto& x : p) x /= sum;
    return p;
}

double shannon_entropy(std::span<const double> p) {
    double h = 0.0;
    for (const double x : p) {
        if (x > 0.0) h -= x * std::log(x);
    }
    return h;
}

double entropy_of_logits(std::span<const double> logits, double temperature) {
    const auto p = softmax(logits, temperature);
    return shannon_entropy(p);
}

double entropy_at(const TokenModel& model, std::span<const int32_t> context,
                  double entropy_temperature) {
    const auto l = model.logits(context);
    return entropy_of_logits(l, entropy_temperature);
}

double token_logprob(std::span<const double> logits, int32_t index) {
    const double max = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (const double l : logits) sum += std::exp(l - max);
    return logits[static_cast<size_t>(index)] - max - std::log(sum);
}

} // namespace sweetmark
