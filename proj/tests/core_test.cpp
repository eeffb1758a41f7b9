#include "doctest.h"

#include "sweetmark/errors.hpp"
#include "sweetmark/hash.hpp"
#include "sweetmark/params.hpp"
#include "sweetmark/partition.hpp"
#include "sweetmark/tokenizer.hpp"
#include "sweetmark/vocab.hpp"

#include "support/models.hpp"

#include <filesystem>
#include <fstream>
#include <unordered_set>

using namespace sweetmark;

TEST_SUITE_BEGIN("core");

TEST_CASE("mix64 golden value and determinism") {
    // mix(1), evaluated independently from the finalizer definition
    CHECK(mix64(1) == 0x910a2dec89025cc1ULL);
    CHECK(mix64(0) == 0xe220a8397b1dcdafULL);
    CHECK(seed_for(0, 0) == 0x910a2dec89025cc1ULL); // key 0, prev 0 -> mix(1)
    CHECK(seed_for(0xDEADBEEFULL, 41) == 0xdf4df98cdad61b87ULL);
    CHECK(seed_for(123, 45) == seed_for(123, 45));
}

TEST_CASE("seed_for has no collisions over a 1e4 scan") {
    std::unordered_set<uint64_t> seen;
    const uint64_t key = 0x1234ABCD;
    for (int32_t prev = 0; prev < 10000; ++prev)
        CHECK(seen.insert(seed_for(key, prev)).second);
}

TEST_CASE("counter rng rejection sampling stays in range") {
    CounterRng rng(99);
    for (int i = 0; i < 1000; ++i) {
        CHECK(rng.below(7) < 7);
        const double u = rng.unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("vocabulary invariants and round trip") {
    auto vocab = testing::make_vocab(16);
    CHECK(vocab->size() == 16);
    CHECK(vocab->unk_id() != vocab->bos_id());
    for (int32_t i = 0; i < vocab->size(); ++i)
        CHECK(vocab->id_of(vocab->token(i)) == i);
    CHECK(vocab->id_of("no-such-token") == -1);
    CHECK(vocab->id_or_unk("no-such-token") == vocab->unk_id());
}

TEST_CASE("vocabulary rejects duplicates, missing specials, tiny sizes") {
    CHECK_THROWS_AS(Vocabulary::from_tokens({"<unk>"}), ConfigError);
    CHECK_THROWS_AS(Vocabulary::from_tokens({"<unk>", "<bos>", "a", "a"}), ConfigError);
    CHECK_THROWS_AS(Vocabulary::from_tokens({"a", "b", "c"}), ConfigError);
}

TEST_CASE("vocabulary file round trip, including escaped tokens") {
    const auto dir = std::filesystem::temp_directory_path() / "sweetmark-core-test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "vocab.txt";

    auto original = Vocabulary::from_tokens(
        {"<unk>", "<bos>", "def", " ", "\n", "\n    ", "a\\b", "x"});
    original.save(path);
    const auto loaded = Vocabulary::load(path);
    CHECK(loaded.size() == original.size());
    CHECK(loaded.content_hash() == original.content_hash());
    for (int32_t i = 0; i < original.size(); ++i) CHECK(loaded.token(i) == original.token(i));

    SUBCASE("bad header is rejected") {
        const auto bad = dir / "bad.txt";
        std::ofstream(bad) << "#not-a-vocab\nfoo\n";
        CHECK_THROWS_AS(Vocabulary::load(bad), DataError);
    }
}

TEST_CASE("code lexer snapshot: def f(x):") {
    Tokenizer tok(Tokenizer::Mode::CodeLexer);
    const auto tokens = tok.tokenize("def f(x):");
    REQUIRE(tokens.size() == 7);
    CHECK(tokens[0].text == "def");
    CHECK(tokens[0].kind == TokenKind::Keyword);
    CHECK(tokens[1].text == " ");
    CHECK(tokens[2].text == "f");
    CHECK(tokens[2].kind == TokenKind::Identifier);
    CHECK(tokens[3].text == "(");
    CHECK(tokens[4].text == "x");
    CHECK(tokens[5].text == ")");
    CHECK(tokens[6].text == ":");
}

TEST_CASE("tokenize to ids maps unknown spellings to unk") {
    Tokenizer tok(Tokenizer::Mode::CodeLexer);
    auto vocab = Vocabulary::from_tokens({"<unk>", "<bos>", "def", " ", "f", "(", ")", ":"});
    const auto ids = tokenize_to_ids("def f(q):", tok, vocab);
    REQUIRE(ids.size() == 7);
    CHECK(ids[0] == 2);
    CHECK(ids[4] == vocab.unk_id()); // q is out of vocabulary
    CHECK(tokenize_to_ids("", tok, vocab).empty());
}

TEST_CASE("lexer round trip on assorted strings") {
    Tokenizer code(Tokenizer::Mode::CodeLexer);
    Tokenizer ws(Tokenizer::Mode::Whitespace);
    const std::vector<std::string> fixtures = {
        "",
        "a  b\n\tc",
        "def f(x):\n    return x + 1\n",
        "s = 'it\\'s' + \"two\"\nn = 0x1F + 2.5e-3 - 7j\n",
        "# comment only\n",
        "f\"prefixed {x}\" and r'raw'",
        "weird $ unicode \xc3\xa9\xc3\xa0 bytes",
        "unterminated 'string\nnext line",
        "a//b **= c != d ... e",
    };
    for (const auto& s : fixtures) {
        CHECK(Tokenizer::detokenize(code.tokenize(s)) == s);
        CHECK(Tokenizer::detokenize(ws.tokenize(s)) == s);
    }
}

TEST_CASE("lexer round trip on random printable soup") {
    Tokenizer code(Tokenizer::Mode::CodeLexer);
    CounterRng rng(0xC0DE);
    const std::string alphabet =
        "abcXYZ_019 \t\n\r#'\"\\+-*/%=<>!&|^~@.,:;()[]{}$?";
    for (int trial = 0; trial < 300; ++trial) {
        std::string s;
        const auto len = rng.below(60);
        for (uint64_t i = 0; i < len; ++i)
            s += alphabet[static_cast<size_t>(rng.below(alphabet.size()))];
        CAPTURE(s);
        CHECK(Tokenizer::detokenize(code.tokenize(s)) == s);
    }
}

TEST_CASE("lexer is deterministic") {
    Tokenizer tok(Tokenizer::Mode::CodeLexer);
    const std::string s = "while acc != 0:\n    acc -= f(acc, 2)\n";
    CHECK(tok.tokenize(s) == tok.tokenize(s));
}

TEST_CASE("watermark params validation") {
    WatermarkParams p;
    p.validate();

    WatermarkParams bad = p;
    bad.gamma = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = p;
    bad.gamma = 1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = p;
    bad.delta = -0.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = p;
    bad.tau = -0.1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = p;
    bad.entropy_temperature = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("bind check requires both lists non-empty") {
    auto vocab = testing::make_vocab(100);
    WatermarkParams p;
    p.gamma = 0.25;
    p.bind_check(*vocab); // floor(25) fine

    p.gamma = 0.001; // floor(0.1) = 0
    CHECK_THROWS_AS(p.bind_check(*vocab), ConfigError);
}

TEST_CASE("params fingerprints are stable, distinct, and key-free") {
    WatermarkParams p;
    p.key = 0x123456789ABCDEF0ULL;
    const auto fp = p.fingerprint();
    const auto kfp = p.key_fingerprint();
    CHECK(fp == p.fingerprint());
    CHECK(kfp == p.key_fingerprint());
    CHECK(fp.size() == 8);
    CHECK(kfp.size() == 8);

    WatermarkParams q = p;
    q.delta = 2.0;
    CHECK(q.fingerprint() != fp);
    q = p;
    q.key = 7;
    CHECK(q.fingerprint() == fp); // fingerprint excludes the key
    CHECK(q.key_fingerprint() != kfp);

    WatermarkParams wllm = p;
    wllm.tau.reset();
    WatermarkParams sweet = p;
    sweet.tau = 0.0;
    CHECK(wllm.fingerprint() != sweet.fingerprint()); // ungated != tau=0
}

TEST_CASE("partition size contract and determinism") {
    const auto p = compute_partition(42, 0.5, 4);
    CHECK(p.green_count() == 2);
    int greens = 0;
    for (int32_t id = 0; id < 4; ++id) greens += p.is_green(id);
    CHECK(greens == 2);
    CHECK(p == compute_partition(42, 0.5, 4));
    CHECK_FALSE(p == compute_partition(43, 0.5, 4));
}

TEST_CASE("partition rejects an empty green list") {
    CHECK_THROWS_AS(compute_partition(1, 0.001, 100), ConfigError);
    CHECK_THROWS_AS(compute_partition(1, 0.5, 1), ConfigError);
}

TEST_CASE("partition marginals are uniform over seeds") {
    // gamma=0.25, |V|=100: every id should be green with frequency 1/4.
    const int32_t V = 100;
    const int trials = 10000;
    std::vector<int> hits(static_cast<size_t>(V), 0);
    for (int s = 0; s < trials; ++s) {
        const auto p = compute_partition(mix64(static_cast<uint64_t>(s)), 0.25, V);
        for (int32_t id = 0; id < V; ++id)
            if (p.is_green(id)) ++hits[static_cast<size_t>(id)];
    }
    for (int32_t id = 0; id < V; ++id) {
        const double freq = static_cast<double>(hits[static_cast<size_t>(id)]) / trials;
        CHECK(freq == doctest::Approx(0.25).epsilon(0.08)); // +-0.02 band
    }
}

TEST_SUITE_END();
