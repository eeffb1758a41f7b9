#pragma once

#include "sweetmark/model.hpp"
#include "sweetmark/params.hpp"
#include "sweetmark/tokenizer.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace sweetmark {

/// Identifier-renaming paraphrase attack. Keywords and builtins are never
/// touched; extra names can be protected explicitly. Fresh names are random
/// lowercase identifiers of length 2..5 that collide with nothing in the
/// input. Discovery is lexical, not scope-aware.
struct RenamePlan {
    double rho = 1.0; // fraction of distinct identifiers to rename
    int name_len_min = 2;
    int name_len_max = 5;
    uint64_t seed = 0;
    std::unordered_set<std::string> protected_names;

    /// Filled by rename_identifiers: old spelling -> new spelling.
    std::map<std::string, std::string> mapping;
};

/// Rewrites ceil(rho * count) distinct identifiers, every occurrence
/// consistently. The output lexes to the same token-kind sequence; only
/// identifier spellings change. Deterministic in (code, plan).
std::string rename_identifiers(const std::string& code, RenamePlan& plan,
                               const Tokenizer& tokenizer);

struct AttackRow {
    double rho = 0.0;
    uint64_t seed = 0;
    double auroc = 0.0;
};

struct AttackCurvePoint {
    double rho = 0.0;
    double mean_auroc = 0.0; // over rename seeds
};

struct AttackCurveResult {
    std::vector<AttackRow> rows;          // one per (rho, seed)
    std::vector<AttackCurvePoint> curve;  // seed-averaged
};

/// For each (rho, seed): rename identifiers in every watermarked code text,
/// re-detect, and compute AUROC against a fixed human negative set. The
/// rho = 0 cell reproduces the unattacked AUROC exactly.
AttackCurveResult attack_curve(const std::vector<std::string>& machine_codes,
                               const TokenModel& model, const WatermarkParams& params,
                               std::span<const double> rho_grid,
                               std::span<const uint64_t> seeds,
                               const std::vector<std::vector<int32_t>>& human_texts,
                               const Tokenizer& tokenizer,
                               const std::unordered_set<std::string>& protected_names = {});

} // namespace sweetmark
