#pragma once

#include "sweetmark/hash.hpp"
#include "sweetmark/model.hpp"
#include "sweetmark/vocab.hpp"

#include <cmath>
#include <memory>
#include <string>
#include <vector>

namespace sweetmark::testing {

/// Synthetic vocabulary: <unk>, <bos>, then t2..t{n-1}.
inline std::shared_ptr<const Vocabulary> make_vocab(int32_t size) {
    std::vector<std::string> tokens{std::string(Vocabulary::kUnkToken),
                                    std::string(Vocabulary::kBosToken)};
    for (int32_t i = 2; i < size; ++i) tokens.push_back("t" + std::to_string(i));
    return std::make_shared<Vocabulary>(Vocabulary::from_tokens(std::move(tokens)));
}

/// Same logit vector for every context.
class ConstantModel : public TokenModel {
public:
    ConstantModel(std::shared_ptr<const Vocabulary> vocab, std::vector<double> logits)
        : vocab_(std::move(vocab)), logits_(std::move(logits)) {}

    ConstantModel(std::shared_ptr<const Vocabulary> vocab, double fill)
        : vocab_(std::move(vocab)),
          logits_(static_cast<size_t>(vocab_->size()), fill) {}

    const Vocabulary& vocab() const override { return *vocab_; }
    std::vector<double> logits(std::span<const int32_t>) const override { return logits_; }

private:
    std::shared_ptr<const Vocabulary> vocab_;
    std::vector<double> logits_;
};

/// Two-regime synthetic model: each step is deterministically (in the
/// context) assigned a low- or high-entropy two-level distribution whose
/// Shannon entropy hits a target solved by bisection. The support of the
/// dominant block is permuted by a hash of the last token, so partitions
/// see varied ids.
class BimodalModel : public TokenModel {
public:
    struct Options {
        double low_fraction = 0.7;    // share of low-entropy steps
        double low_entropy_lo = 0.08; // nats
        double low_entropy_hi = 0.12;
        double high_entropy_lo = 1.5;
        double high_entropy_hi = 2.5;
        int low_support = 1;  // dominant-block size, low mode
        int high_support = 4; // high mode (must satisfy ln(m) < high_entropy_lo)
        uint64_t seed = 0x5EEDBA5E;
    };

    BimodalModel(std::shared_ptr<const Vocabulary> vocab, Options opt = {})
        : vocab_(std::move(vocab)), opt_(opt) {}

    const Vocabulary& vocab() const override { return *vocab_; }

    std::vector<double> logits(std::span<const int32_t> context) const override {
        const auto V = vocab_->size();
        const int32_t last = context.empty() ? vocab_->bos_id() : context.back();
        const uint64_t h =
            mix64(opt_.seed ^ mix64(context.size() * 0x9E3779B97F4A7C15ULL +
                                    static_cast<uint64_t>(static_cast<uint32_t>(last))));

        const bool low = (mix64(h + 1) % 10000) <
                         static_cast<uint64_t>(opt_.low_fraction * 10000.0);
        const double lo = low ? opt_.low_entropy_lo : opt_.high_entropy_lo;
        const double hi = low ? opt_.low_entropy_hi : opt_.high_entropy_hi;
        const double unit = static_cast<double>(mix64(h + 2) >> 11) * 0x1.0p-53;
        const double target = lo + unit * (hi - lo);
        const int m = low ? opt_.low_support : opt_.high_support;

        const double q = solve_mass(target, m, V);
        const auto base = static_cast<int32_t>(mix64(h + 3) % static_cast<uint64_t>(V));
        const auto step = static_cast<int32_t>(mix64(h + 4) % static_cast<uint64_t>(V / 2)) * 2 + 1;

        const double p_top = q / static_cast<double>(m);
        const double p_rest = (1.0 - q) / static_cast<double>(V - m);
        std::vector<double> l(static_cast<size_t>(V), std::log(p_rest));
        for (int j = 0; j < m; ++j) {
            const auto id = static_cast<int32_t>(
                (static_cast<int64_t>(base) + static_cast<int64_t>(j) * step) % V);
            l[static_cast<size_t>(id)] = std::log(p_top);
        }
        return l;
    }

private:
    // Entropy of (q mass uniform over m tokens, rest uniform) is strictly
    // decreasing in q on (m/V, 1); invert by bisection.
    static double solve_mass(double target, int m, int32_t V) {
        const double md = static_cast<double>(m);
        const double vd = static_cast<double>(V);
        auto entropy = [&](double q) {
            const double rest = (1.0 - q) / (vd - md);
            double h = -q * std::log(q / md);
            if (q < 1.0) h -= (1.0 - q) * std::log(rest);
            return h;
        };
        double lo = md / vd + 1e-12, hi = 1.0 - 1e-12;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (entropy(mid) > target) lo = mid;
            else hi = mid;
        }
        return 0.5 * (lo + hi);
    }

    std::shared_ptr<const Vocabulary> vocab_;
    Options opt_;
};

} // namespace sweetmark::testing
