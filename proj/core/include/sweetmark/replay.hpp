#pragma once

#include "sweetmark/generator.hpp"
#include "sweetmark/model.hpp"

#include <filesystem>
#include <memory>

namespace sweetmark {

/// Plays back the logit vectors recorded in a generation trace, enabling
/// bit-exact regression of anything downstream of the model. The step index
/// is derived from the context length, so logits() stays a pure function of
/// the context.
class ReplayModel : public TokenModel {
public:
    ReplayModel(const GenerationTrace& trace, std::shared_ptr<const Vocabulary> vocab);

    static ReplayModel from_trace_file(const std::filesystem::path& path,
                                       std::shared_ptr<const Vocabulary> vocab);

    const Vocabulary& vocab() const override { return *vocab_; }
    std::vector<double> logits(std::span<const int32_t> context) const override;

    size_t step_count() const { return steps_.size(); }
    const std::vector<int32_t>& prompt() const { return prompt_; }

private:
    std::shared_ptr<const Vocabulary> vocab_;
    std::vector<int32_t> prompt_;
    std::vector<std::vector<double>> steps_;
    size_t base_len_ = 1; // effective context length at step 0
};

} // namespace sweetmark
