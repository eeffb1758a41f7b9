#include "sweetmark/replay.hpp"

#include "sweetmark/errors.hpp"

namespace sweetmark {

ReplayModel::ReplayModel(const GenerationTrace& trace, std::shared_ptr<const Vocabulary> vocab)
    : vocab_(std::move(vocab)) {
    if (!vocab_) throw ConfigError("replay model needs a vocabulary");
    if (trace.vocab_hash != vocab_->content_hash())
        throw ConfigError("trace was generated against a different vocabulary (hash mismatch)");
    if (!trace.logits_recorded)
        throw DataError("trace has no recorded logits; re-run generation with logit recording");

    prompt_ = trace.prompt;
    base_len_ = prompt_.empty() ? 1 : prompt_.size();
    steps_.reserve(trace.steps.size());
    for (const auto& s : trace.steps) {
        if (!s.logits || s.logits->size() != static_cast<size_t>(vocab_->size()))
            throw DataError("trace step is missing a full logit vector");
        steps_.push_back(*s.logits);
    }
}

ReplayModel ReplayModel::from_trace_file(const std::filesystem::path& path,
                                         std::shared_ptr<const Vocabulary> vocab) {
    return ReplayModel(GenerationTrace::load_jsonl(path), std::move(vocab));
}

std::vector<double> ReplayModel::logits(std::span<const int32_t> context) const {
    if (context.size() < base_len_)
        throw DataError("replay context shorter than the recorded prompt");
    const size_t t = context.size() - base_len_;
    if (t >= steps_.size())
        throw DataError("replay context length " + std::to_string(context.size()) +
                        " exceeds the recorded " + std::to_string(steps_.size()) + " steps");
    return steps_[t];
}

} // namespace sweetmark
