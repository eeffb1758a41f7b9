#pragma once

#include "sweetmark/vocab.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace sweetmark {

enum class TokenKind {
    Identifier,
    Keyword,
    Builtin,
    Number,
    String,
    Comment,
    Whitespace,
    Newline,
    Operator,
    Other,
    Word, // whitespace-mode non-space runs
};

std::string_view token_kind_name(TokenKind kind);

struct Token {
    std::string text;
    TokenKind kind;

    bool operator==(const Token&) const = default;
};

/// Lossless splitter: the concatenation of the emitted token texts always
/// reproduces the input byte-for-byte, whitespace runs included.
class Tokenizer {
public:
    enum class Mode { CodeLexer, Whitespace };

    /// CodeLexer mode ships with Python keyword/builtin sets; both sets can
    /// be replaced for other languages.
    explicit Tokenizer(Mode mode = Mode::CodeLexer);
    Tokenizer(Mode mode, std::unordered_set<std::string> keywords,
              std::unordered_set<std::string> builtins);

    Mode mode() const { return mode_; }
    const std::unordered_set<std::string>& keywords() const { return keywords_; }
    const std::unordered_set<std::string>& builtins() const { return builtins_; }

    std::vector<Token> tokenize(std::string_view text) const;
    static std::string detokenize(const std::vector<Token>& tokens);

private:
    std::vector<Token> lex_code(std::string_view text) const;
    std::vector<Token> lex_whitespace(std::string_view text) const;

    Mode mode_;
    std::unordered_set<std::string> keywords_;
    std::unordered_set<std::string> builtins_;
};

/// Token texts looked up in the vocabulary; unknown spellings map to unk_id
/// and never fail.
std::vector<int32_t> tokenize_to_ids(std::string_view text, const Tokenizer& tokenizer,
                                     const Vocabulary& vocab);

std::string detokenize_ids(std::span<const int32_t> ids, const Vocabulary& vocab);

} // namespace sweetmark
