#pragma once

#include "sweetmark/model.hpp"

#include <filesystem>
#include <memory>
#include <unordered_map>

namespace sweetmark {

/// Backoff n-gram model over token ids. Scoring finds counts at the longest
/// observed context suffix and interpolates shorter-context estimates with a
/// prior mass of alpha * backoff^level, bottoming out at an
/// additively-smoothed unigram: P0(w) = (count(w) + alpha) / (N + alpha|V|).
/// As alpha -> 0 the estimate converges to the pure count ratio at the
/// longest observed context. Probabilities are strictly positive and
/// renormalized over the vocabulary.
class NGramModel : public TokenModel {
public:
    static constexpr std::string_view kFileHeader = "#sweetmark-ngram v1";

    struct Options {
        int order = 4;
        double smoothing_alpha = 0.1;
        double backoff_factor = 0.4;
    };

    /// Pure counting over the corpus; document order does not matter.
    /// Each document is counted with a <bos> sentinel prepended.
    static NGramModel train(std::shared_ptr<const Vocabulary> vocab,
                            const std::vector<std::vector<int32_t>>& corpus,
                            const Options& options);

    static NGramModel load(const std::filesystem::path& path,
                           std::shared_ptr<const Vocabulary> vocab);
    void save(const std::filesystem::path& path) const;

    const Vocabulary& vocab() const override { return *vocab_; }
    std::vector<double> logits(std::span<const int32_t> context) const override;

    /// Normalized next-token distribution; logits() is its elementwise log.
    std::vector<double> probs(std::span<const int32_t> context) const;

    int order() const { return options_.order; }
    double smoothing_alpha() const { return options_.smoothing_alpha; }
    double backoff_factor() const { return options_.backoff_factor; }

private:
    struct ContextCounts {
        uint64_t total = 0;
        std::unordered_map<int32_t, uint64_t> continuations;
    };

    struct VecHash {
        size_t operator()(const std::vector<int32_t>& v) const;
    };
    using ContextMap = std::unordered_map<std::vector<int32_t>, ContextCounts, VecHash>;

    NGramModel(std::shared_ptr<const Vocabulary> vocab, Options options);
    void finalize_unigram();

    std::shared_ptr<const Vocabulary> vocab_;
    Options options_;
    std::vector<uint64_t> unigram_counts_;
    uint64_t unigram_total_ = 0;
    std::vector<double> unigram_probs_;   // precomputed P0
    std::vector<ContextMap> levels_;      // index 0 <-> context length 1
    std::vector<double> level_prior_;     // alpha * backoff^level
};

} // namespace sweetmark
