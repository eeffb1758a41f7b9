#pragma once

#include "sweetmark/model.hpp"

#include <span>
#include <vector>

namespace sweetmark {

/// Temperature softmax with max-subtraction; stable for logits up to ~1e4.
std::vector<double> softmax(std::span<const double> logits, double temperature = 1.0);

/// Shannon entropy in nats, with the 0*ln(0) = 0 convention.
double shannon_entropy(std::span<const double> p);

double entropy_of_logits(std::span<const double> logits, double temperature);

/// The gating signal H_t: Shannon entropy of the unwatermarked distribution
/// at entropy_temperature. Generation and detection both call exactly this.
double entropy_at(const TokenModel& model, std::span<const int32_t> context,
                  double entropy_temperature);

/// log softmax(logits, 1)[index]; the per-token log-likelihood used by the
/// quality proxy.
double token_logprob(std::span<const double> logits, int32_t index);

} // namespace sweetmark
