#include "sweetmark/ngram.hpp"

#include "sweetmark/errors.hpp"
#include "sweetmark/hash.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sweetmark {

size_t NGramModel::VecHash::operator()(const std::vector<int32_t>& v) const {
    uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (const int32_t x : v) h = mix64(h ^ static_cast<uint64_t>(static_cast<uint32_t>(x)));
    return static_cast<size_t>(h);
}

NGramModel::NGramModel(std::shared_ptr<const Vocabulary> vocab, Options options)
    : vocab_(std::move(vocab)), options_(options) {
    if (!vocab_) throw ConfigError("n-gram model needs a vocabulary");
    if (options_.order < 1) throw ConfigError("n-gram order must be >= 1");
    if (!(options_.smoothing_alpha > 0.0))
        throw ConfigError("smoothing_alpha must be > 0");
    if (!(options_.backoff_factor > 0.0 && options_.backoff_factor <= 1.0))
        throw ConfigError("backoff_factor must be in (0,1]");
    unigram_counts_.assign(static_cast<size_t>(vocab_->size()), 0);
    levels_.resize(static_cast<size_t>(options_.order - 1));
    level_prior_.resize(levels_.size());
    for (size_t l = 0; l < levels_.size(); ++l)
        level_prior_[l] = options_.smoothing_alpha *
                          std::pow(options_.backoff_factor, static_cast<double>(l + 1));
}

void NGramModel::finalize_unigram() {
    const auto V = static_cast<double>(vocab_->size());
    const double denom = static_cast<double>(unigram_total_) + options_.smoothing_alpha * V;
    unigram_probs_.resize(unigram_counts_.size());
    for (size_t i = 0; i < unigram_counts_.size(); ++i)
        unigram_probs_[i] =
            (static_cast<double>(unigram_counts_[i]) + options_.smoothing_alpha) / denom;
}

NGramModel NGramModel::train(std::shared_ptr<const Vocabulary> vocab,
                             const std::vector<std::vector<int32_t>>& corpus,
                             const Options& options) {
    NGramModel m(std::move(vocab), options);
    if (corpus.empty()) throw DataError("n-gram training corpus is empty");

    const int32_t V = m.vocab_->size();
    std::vector<int32_t> padded;
    for (const auto& doc : corpus) {
        padded.clear();
        padded.push_back(m.vocab_->bos_id());
        padded.insert(padded.end(), doc.begin(), doc.end());
        for (size_t i = 1; i < padded.size(); ++i) {
            const int32_t w = padded[i];
            if (w < 0 || w >= V)
                throw DataError("corpus token id " + std::to_string(w) + " out of range");
            m.unigram_counts_[static_cast<size_t>(w)]++;
            m.unigram_total_++;
            for (size_t len = 1; len < static_cast<size_t>(options.order) && len <= i; ++len) {
                std::vector<int32_t> ctx(padded.begin() + static_cast<ptrdiff_t>(i - len),
                                         padded.begin() + static_cast<ptrdiff_t>(i));
                auto& entry = m.levels_[len - 1][std::move(ctx)];
                entry.total++;
                entry.continuations[w]++;
            }
        }
    }
    m.finalize_unigram();
    return m;
}

std::vector<double> NGramModel::probs(std::span<const int32_t> context) const {
    std::vector<double> p = unigram_probs_;
    const size_t max_len = std::min(levels_.size(), context.size());
    for (size_t len = 1; len <= max_len; ++len) {
        const std::vector<int32_t> key(context.end() - static_cast<ptrdiff_t>(len),
                                       context.end());
        const auto& level = levels_[len - 1];
        const auto it = level.find(key);
        if (it == level.end()) break; // longer suffixes cannot be observed either
        const double m = level_prior_[len - 1];
        const double denom = static_cast<double>(it->second.total) + m;
        const double scale = m / denom;
        for (auto& x : p) x *= scale;
        for (const auto& [w, c] : it->second.continuations)
            p[static_cast<size_t>(w)] += static_cast<double>(c) / denom;
    }
    double sum = 0.0;
    for (const double x : p) sum += x;
    for (auto& x : p) x /= sum;
    return p;
}

std::vector<double> NGramModel::logits(std::span<const int32_t> context) const {
    auto p = probs(context);
    for (auto& x : p) x = std::log(x);
    return p;
}

namespace {

std::string hexdouble(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
}

double parse_hexdouble(const std::string& s, const char* what) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw DataError(std::string("bad numeric field '") + s + "' for " + what);
    return v;
}

} // namespace

void NGramModel::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model file: " + path.string());

    out << kFileHeader << '\n';
    out << "order " << options_.order << '\n';
    out << "alpha " << hexdouble(options_.smoothing_alpha) << '\n';
    out << "backoff " << hexdouble(options_.backoff_factor) << '\n';
    out << "vocab_size " << vocab_->size() << '\n';
    char vh[32];
    std::snprintf(vh, sizeof(vh), "%016llx",
                  static_cast<unsigned long long>(vocab_->content_hash()));
    out << "vocab_hash " << vh << '\n';
    out << "unigram_total " << unigram_total_ << '\n';

    for (size_t i = 0; i < unigram_counts_.size(); ++i) {
        if (unigram_counts_[i] != 0) out << "u " << i << ' ' << unigram_counts_[i] << '\n';
    }

    // Sorted context lines keep re-saves byte-identical.
    for (size_t l = 0; l < levels_.size(); ++l) {
        std::vector<const std::pair<const std::vector<int32_t>, ContextCounts>*> entries;
        entries.reserve(levels_[l].size());
        for (const auto& kv : levels_[l]) entries.push_back(&kv);
        std::sort(entries.begin(), entries.end(),
                  [](const auto* a, const auto* b) { return a->first < b->first; });
        for (const auto* kv : entries) {
            out << "c " << (l + 1);
            for (const int32_t id : kv->first) out << ' ' << id;
            out << " | " << kv->second.total;
            std::vector<std::pair<int32_t, uint64_t>> conts(kv->second.continuations.begin(),
                                                            kv->second.continuations.end());
            std::sort(conts.begin(), conts.end());
            for (const auto& [w, c] : conts) out << ' ' << w << ' ' << c;
            out << '\n';
        }
    }
    if (!out) throw DataError("failed writing model file: " + path.string());
}

NGramModel NGramModel::load(const std::filesystem::path& path,
                            std::shared_ptr<const Vocabulary> vocab) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model file: " + path.string());

    std::string line;
    if (!std::getline(in, line) || line != kFileHeader)
        throw DataError("bad model header in " + path.string() + " (expected '" +
                        std::string(kFileHeader) + "')");

    auto expect_kv = [&](const char* key) -> std::string {
        if (!std::getline(in, line)) throw DataError(std::string("model file truncated before ") + key);
        std::istringstream ss(line);
        std::string k, v;
        ss >> k >> v;
        if (k != key) throw DataError("expected '" + std::string(key) + "' line, got '" + line + "'");
        return v;
    };

    Options opt;
    opt.order = std::stoi(expect_kv("order"));
    opt.smoothing_alpha = parse_hexdouble(expect_kv("alpha"), "alpha");
    opt.backoff_factor = parse_hexdouble(expect_kv("backoff"), "backoff");
    const int32_t vsize = std::stoi(expect_kv("vocab_size"));
    const std::string vhash = expect_kv("vocab_hash");

    if (!vocab) throw ConfigError("n-gram model needs a vocabulary");
    if (vsize != vocab->size())
        throw ConfigError("model/vocabulary size mismatch: model has " + std::to_string(vsize) +
                          ", vocabulary has " + std::to_string(vocab->size()));
    char vh[32];
    std::snprintf(vh, sizeof(vh), "%016llx",
                  static_cast<unsigned long long>(vocab->content_hash()));
    if (vhash != vh)
        throw ConfigError("model was trained against a different vocabulary (hash mismatch)");

    NGramModel m(std::move(vocab), opt);
    m.unigram_total_ = std::stoull(expect_kv("unigram_total"));

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "u") {
            size_t id = 0;
            uint64_t count = 0;
            ss >> id >> count;
            if (id >= m.unigram_counts_.size()) throw DataError("unigram id out of range: " + line);
            m.unigram_counts_[id] = count;
        } else if (tag == "c") {
            size_t len = 0;
            ss >> len;
            if (len < 1 || len > m.levels_.size())
                throw DataError("context level out of range: " + line);
            std::vector<int32_t> ctx(len);
            for (auto& id : ctx) ss >> id;
            std::string bar;
            ss >> bar;
            if (bar != "|") throw DataError("malformed context line: " + line);
            ContextCounts counts;
            ss >> counts.total;
            int32_t w = 0;
            uint64_t c = 0;
            while (ss >> w >> c) counts.continuations[w] = c;
            m.levels_[len - 1].emplace(std::move(ctx), std::move(counts));
        } else {
            throw DataError("unknown model line tag '" + tag + "'");
        }
    }
    m.finalize_unigram();
    return m;
}

} // namespace sweetmark
