#pragma once

#include "sweetmark/vocab.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace sweetmark {

/// Next-token logit source. Implementations must be deterministic in the
/// context and immutable after construction; concurrent readers are safe.
class TokenModel {
public:
    virtual ~TokenModel() = default;

    virtual const Vocabulary& vocab() const = 0;

    /// One finite logit per vocabulary entry.
    virtual std::vector<double> logits(std::span<const int32_t> context) const = 0;
};

} // namespace sweetmark
