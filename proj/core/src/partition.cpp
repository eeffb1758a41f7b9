#include "sweetmark/partition.hpp"

#include "sweetmark/errors.hpp"
#include "sweetmark/params.hpp"

#include <numeric>

namespace sweetmark {

Partition compute_partition(uint64_t seed, double gamma, int32_t vocab_size) {
    if (vocab_size < 2)
        throw ConfigError("partition needs |V| >= 2, got " + std::to_string(vocab_size));
    const int32_t green = green_count_for(gamma, vocab_size);
    if (green < 1 || green > vocab_size - 1)
        throw ConfigError("floor(gamma*|V|) = " + std::to_string(green) +
                          " leaves an empty green or red list for |V| = " +
                          std::to_string(vocab_size));

    std::vector<int32_t> ids(static_cast<size_t>(vocab_size));
    std::iota(ids.begin(), ids.end(), 0);

    CounterRng rng(seed);
    for (int32_t j = vocab_size - 1; j >= 1; --j) {
        const auto k = static_cast<int32_t>(rng.below(static_cast<uint64_t>(j) + 1));
        std::swap(ids[static_cast<size_t>(j)], ids[static_cast<size_t>(k)]);
    }

    Partition p;
    p.vocab_size_ = vocab_size;
    p.green_count_ = green;
    p.bits_.assign((static_cast<size_t>(vocab_size) + 63) / 64, 0);
    for (int32_t i = 0; i < green; ++i) {
        const int32_t id = ids[static_cast<size_t>(i)];
        p.bits_[static_cast<size_t>(id) >> 6] |= uint64_t{1} << (id & 63);
    }
    return p;
}

} // namespace sweetmark
