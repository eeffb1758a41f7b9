#include "doctest.h"

#include "sweetmark/distributions.hpp"
#include "sweetmark/errors.hpp"
#include "sweetmark/generator.hpp"
#include "sweetmark/hash.hpp"
#include "sweetmark/ngram.hpp"
#include "sweetmark/replay.hpp"

#include "support/models.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

using namespace sweetmark;

TEST_SUITE_BEGIN("lm");

TEST_CASE("softmax basics") {
    const std::vector<double> equal(8, 3.5);
    for (const double p : softmax(equal, 1.0)) CHECK(p == doctest::Approx(0.125).epsilon(1e-12));

    const std::vector<double> two{0.0, std::log(3.0)};
    const auto p = softmax(two, 1.0);
    CHECK(p[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("softmax shift invariance and normalization") {
    CounterRng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> l(16), shifted(16);
        const double c = (rng.unit() - 0.5) * 200.0;
        for (size_t i = 0; i < l.size(); ++i) {
            l[i] = (rng.unit() - 0.5) * 20.0;
            shifted[i] = l[i] + c;
        }
        const auto a = softmax(l, 0.7);
        const auto b = softmax(shifted, 0.7);
        double sum = 0.0;
        for (size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-9));
            sum += a[i];
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("softmax survives huge logits") {
    const std::vector<double> l{1e4, -1e4, 0.0};
    const auto p = softmax(l, 1.0);
    CHECK(std::isfinite(p[0]));
    CHECK(p[0] == doctest::Approx(1.0));
    CHECK(p[1] == doctest::Approx(0.0));
}

TEST_CASE("shannon entropy fixtures") {
    CHECK(shannon_entropy(std::vector<double>{1.0}) == 0.0);
    CHECK(shannon_entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}) ==
          doctest::Approx(1.3862943611198906).epsilon(1e-12));
    CHECK(shannon_entropy(std::vector<double>{0.5, 0.5, 0.0, 0.0}) ==
          doctest::Approx(0.69314718055994531).epsilon(1e-12));
    CHECK(shannon_entropy(std::vector<double>{0.9, 0.1}) ==
          doctest::Approx(0.32508297339144823).epsilon(1e-12));
    CHECK(shannon_entropy(std::vector<double>{0.4, 0.3, 0.2, 0.1}) ==
          doctest::Approx(1.2798542258336675).epsilon(1e-12));
}

TEST_CASE("entropy_at: constant logits give ln |V|") {
    auto vocab = testing::make_vocab(32);
    testing::ConstantModel model(vocab, 0.0);
    const std::vector<int32_t> ctx{vocab->bos_id()};
    CHECK(entropy_at(model, ctx, 1.0) == doctest::Approx(std::log(32.0)).epsilon(1e-12));
}

TEST_CASE("entropy never decreases in temperature") {
    CounterRng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> l(24);
        for (auto& x : l) x = (rng.unit() - 0.5) * 8.0;
        double prev = entropy_of_logits(l, 0.25);
        for (const double t : {0.5, 1.0, 2.0, 4.0, 8.0}) {
            const double h = entropy_of_logits(l, t);
            CHECK(h >= prev - 1e-12);
            prev = h;
        }
    }
}

TEST_CASE("token_logprob matches softmax") {
    const std::vector<double> l{1.0, -2.0, 0.5, 3.0};
    const auto p = softmax(l, 1.0);
    for (int32_t i = 0; i < 4; ++i)
        CHECK(token_logprob(l, i) ==
              doctest::Approx(std::log(p[static_cast<size_t>(i)])).epsilon(1e-12));
}

namespace {

std::shared_ptr<const Vocabulary> abc_vocab() {
    return std::make_shared<Vocabulary>(
        Vocabulary::from_tokens({"<unk>", "<bos>", "a", "b", "c"}));
}

} // namespace

TEST_CASE("ngram: single observed continuation dominates as alpha -> 0") {
    auto vocab = abc_vocab();
    const int32_t a = vocab->id_of("a"), b = vocab->id_of("b");
    NGramModel::Options opt;
    opt.order = 2;
    opt.smoothing_alpha = 1e-9;
    const auto model =
        NGramModel::train(vocab, {{a, b, a, b}}, opt);
    const auto p = model.probs(std::vector<int32_t>{a});
    CHECK(p[static_cast<size_t>(b)] > 0.999999);
}

TEST_CASE("ngram: symmetric continuations split evenly") {
    auto vocab = abc_vocab();
    const int32_t a = vocab->id_of("a"), b = vocab->id_of("b"), c = vocab->id_of("c");
    NGramModel::Options opt;
    opt.order = 2;
    opt.smoothing_alpha = 1e-9;
    const auto model = NGramModel::train(vocab, {{a, b}, {a, c}}, opt);
    const auto p = model.probs(std::vector<int32_t>{a});
    CHECK(p[static_cast<size_t>(b)] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(p[static_cast<size_t>(c)] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(p[static_cast<size_t>(b)] == p[static_cast<size_t>(c)]);
}

TEST_CASE("ngram: probabilities are positive and normalized everywhere") {
    auto vocab = testing::make_vocab(24);
    CounterRng rng(3);
    std::vector<std::vector<int32_t>> corpus;
    for (int d = 0; d < 10; ++d) {
        std::vector<int32_t> doc;
        for (int i = 0; i < 50; ++i)
            doc.push_back(static_cast<int32_t>(rng.below(24)));
        corpus.push_back(std::move(doc));
    }
    const auto model = NGramModel::train(vocab, corpus, {});

    for (int trial = 0; trial < 30; ++trial) {
        std::vector<int32_t> ctx;
        const auto len = rng.below(6);
        for (uint64_t i = 0; i < len; ++i)
            ctx.push_back(static_cast<int32_t>(rng.below(24)));
        const auto p = model.probs(ctx);
        double sum = 0.0;
        for (const double x : p) {
            CHECK(x > 0.0);
            sum += x;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("ngram training is document-order independent") {
    auto vocab = testing::make_vocab(12);
    CounterRng rng(5);
    std::vector<std::vector<int32_t>> corpus;
    for (int d = 0; d < 6; ++d) {
        std::vector<int32_t> doc;
        for (int i = 0; i < 30; ++i) doc.push_back(static_cast<int32_t>(rng.below(12)));
        corpus.push_back(std::move(doc));
    }
    auto reversed = corpus;
    std::reverse(reversed.begin(), reversed.end());

    const auto m1 = NGramModel::train(vocab, corpus, {});
    const auto m2 = NGramModel::train(vocab, reversed, {});
    const std::vector<int32_t> ctx{3, 7, 1};
    CHECK(m1.probs(ctx) == m2.probs(ctx)); // bitwise: counts are identical
}

TEST_CASE("ngram rejects an empty corpus") {
    auto vocab = testing::make_vocab(8);
    CHECK_THROWS_AS(NGramModel::train(vocab, {}, {}), DataError);
}

TEST_CASE("ngram file round trip is exact and re-saves byte-identically") {
    auto vocab = testing::make_vocab(20);
    CounterRng rng(17);
    std::vector<std::vector<int32_t>> corpus;
    for (int d = 0; d < 8; ++d) {
        std::vector<int32_t> doc;
        for (int i = 0; i < 40; ++i) doc.push_back(static_cast<int32_t>(rng.below(20)));
        corpus.push_back(std::move(doc));
    }
    NGramModel::Options opt;
    opt.order = 3;
    opt.smoothing_alpha = 0.37;
    opt.backoff_factor = 0.55;
    const auto model = NGramModel::train(vocab, corpus, opt);

    const auto dir = std::filesystem::temp_directory_path() / "sweetmark-lm-test";
    std::filesystem::create_directories(dir);
    const auto p1 = dir / "model1.txt";
    const auto p2 = dir / "model2.txt";
    model.save(p1);
    const auto loaded = NGramModel::load(p1, vocab);
    loaded.save(p2);

    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    CHECK(slurp(p1) == slurp(p2));

    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int32_t> ctx;
        for (uint64_t i = 0, n = rng.below(4); i < n; ++i)
            ctx.push_back(static_cast<int32_t>(rng.below(20)));
        CHECK(model.probs(ctx) == loaded.probs(ctx)); // bitwise
    }

    SUBCASE("vocabulary mismatch is rejected") {
        auto other = testing::make_vocab(21);
        CHECK_THROWS_AS(NGramModel::load(p1, other), ConfigError);
    }
    SUBCASE("bad header is rejected") {
        const auto bad = dir / "bad.txt";
        std::ofstream(bad) << "#wrong\n";
        CHECK_THROWS_AS(NGramModel::load(bad, vocab), DataError);
    }
}

TEST_CASE("replay model returns stored logits by step") {
    auto vocab = testing::make_vocab(6);
    testing::ConstantModel base(vocab, 0.0);
    WatermarkParams params;
    params.gamma = 0.5;
    params.delta = 1.0;
    SamplerConfig sampler;
    sampler.max_tokens = 5;
    sampler.rng_seed = 9;

    const auto result = generate(base, {}, params, sampler, /*record_logits=*/true);
    const ReplayModel replay(result.trace, vocab);
    CHECK(replay.step_count() == 5);

    std::vector<int32_t> ctx{vocab->bos_id()};
    for (size_t t = 0; t < 5; ++t) {
        const auto l = replay.logits(ctx);
        CHECK(l == *result.trace.steps[t].logits);
        CHECK(entropy_of_logits(l, 1.0) == doctest::Approx(std::log(6.0)));
        ctx.push_back(result.tokens[t]);
    }
    CHECK_THROWS_AS(replay.logits(ctx), DataError); // one past the end

    SUBCASE("traces without logits cannot replay") {
        const auto bare = generate(base, {}, params, sampler, /*record_logits=*/false);
        CHECK_THROWS_AS(ReplayModel(bare.trace, vocab), DataError);
    }
}

TEST_SUITE_END();
