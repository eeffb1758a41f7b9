#include "sweetmark/attack.hpp"

#include "sweetmark/detector.hpp"
#include "sweetmark/errors.hpp"
#include "sweetmark/eval.hpp"
#include "sweetmark/hash.hpp"

#include <algorithm>
#include <cmath>

namespace sweetmark {

namespace {

std::string fresh_name(CounterRng& rng, int len_min, int len_max,
                       const std::unordered_set<std::string>& taken,
                       const Tokenizer& tokenizer) {
    for (;;) {
        const auto len = static_cast<size_t>(
            len_min + static_cast<int>(rng.below(static_cast<uint64_t>(len_max - len_min + 1))));
        std::string name;
        name.reserve(len);
        name += static_cast<char>('a' + rng.below(26));
        while (name.size() < len) {
            const auto c = rng.below(36);
            name += c < 26 ? static_cast<char>('a' + c) : static_cast<char>('0' + (c - 26));
        }
        if (taken.count(name) || tokenizer.keywords().count(name) ||
            tokenizer.builtins().count(name))
            continue;
        return name;
    }
}

} // namespace

std::string rename_identifiers(const std::string& code, RenamePlan& plan,
                               const Tokenizer& tokenizer) {
    if (tokenizer.mode() != Tokenizer::Mode::CodeLexer)
        throw ConfigError("identifier renaming needs the code-lexer tokenizer");
    if (!(plan.rho >= 0.0 && plan.rho <= 1.0))
        throw ConfigError("rho must be in [0,1]");
    if (plan.name_len_min < 1 || plan.name_len_max < plan.name_len_min)
        throw ConfigError("bad rename length range");

    plan.mapping.clear();
    auto tokens = tokenizer.tokenize(code);

    // Distinct identifiers in first-occurrence order; keywords and builtins
    // already lex as their own kinds and are skipped by construction.
    std::vector<std::string> distinct;
    std::unordered_set<std::string> seen;
    std::unordered_set<std::string> all_names;
    for (const auto& t : tokens) {
        if (t.kind != TokenKind::Identifier) continue;
        all_names.insert(t.text);
        if (plan.protected_names.count(t.text)) continue;
        if (seen.insert(t.text).second) distinct.push_back(t.text);
    }

    const auto n_rename = static_cast<size_t>(
        std::ceil(plan.rho * static_cast<double>(distinct.size())));
    if (n_rename == 0) return code;

    CounterRng rng(plan.seed);
    // Seeded partial Fisher-Yates picks the victims uniformly.
    std::vector<size_t> order(distinct.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (size_t i = order.size(); i-- > 1;) {
        const auto k = static_cast<size_t>(rng.below(i + 1));
        std::swap(order[i], order[k]);
    }

    std::unordered_set<std::string> taken = all_names;
    for (size_t i = 0; i < n_rename; ++i) {
        const std::string& victim = distinct[order[i]];
        std::string name = fresh_name(rng, plan.name_len_min, plan.name_len_max, taken, tokenizer);
        taken.insert(name);
        plan.mapping.emplace(victim, std::move(name));
    }

    for (auto& t : tokens) {
        if (t.kind != TokenKind::Identifier) continue;
        const auto it = plan.mapping.find(t.text);
        if (it != plan.mapping.end()) t.text = it->second;
    }
    return Tokenizer::detokenize(tokens);
}

AttackCurveResult attack_curve(const std::vector<std::string>& machine_codes,
                               const TokenModel& model, const WatermarkParams& params,
                               std::span<const double> rho_grid,
                               std::span<const uint64_t> seeds,
                               const std::vector<std::vector<int32_t>>& human_texts,
                               const Tokenizer& tokenizer,
                               const std::unordered_set<std::string>& protected_names) {
    if (machine_codes.empty()) throw DataError("attack needs machine code texts");
    if (rho_grid.empty()) throw ConfigError("attack rho grid is empty");
    if (seeds.empty()) throw ConfigError("attack needs at least one rename seed");

    // The human negative set never changes; score it once.
    std::vector<ScoredSample> human_scores;
    for (const auto& text : human_texts) {
        if (text.empty()) continue;
        try {
            const auto report = detect(model, {}, text, params);
            human_scores.push_back({report.z, SampleLabel::Human,
                                    static_cast<int64_t>(text.size())});
        } catch (const UndefinedStatistic&) {
        }
    }

    AttackCurveResult result;
    for (const double rho : rho_grid) {
        double auc_sum = 0.0;
        for (const uint64_t seed : seeds) {
            std::vector<ScoredSample> scored = human_scores;
            for (size_t ci = 0; ci < machine_codes.size(); ++ci) {
                RenamePlan plan;
                plan.rho = rho;
                plan.seed = mix64(seed + ci);
                plan.protected_names = protected_names;
                const std::string attacked =
                    rename_identifiers(machine_codes[ci], plan, tokenizer);
                const auto ids = tokenize_to_ids(attacked, tokenizer, model.vocab());
                if (ids.empty()) continue;
                try {
                    const auto report = detect(model, {}, ids, params);
                    scored.push_back({report.z, SampleLabel::Machine,
                                      static_cast<int64_t>(ids.size())});
                } catch (const UndefinedStatistic&) {
                }
            }
            const double auc = auroc(scored);
            result.rows.push_back({rho, seed, auc});
            auc_sum += auc;
        }
        result.curve.push_back({rho, auc_sum / static_cast<double>(seeds.size())});
    }
    return result;
}

} // namespace sweetmark
