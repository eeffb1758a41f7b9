#include "sweetmark/tokenizer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace sweetmark {

namespace {

const std::unordered_set<std::string>& python_keywords() {
    static const std::unordered_set<std::string> kw = {
        "False", "None", "True", "and", "as", "assert", "async", "await", "break",
        "class", "continue", "def", "del", "elif", "else", "except", "finally",
        "for", "from", "global", "if", "import", "in", "is", "lambda", "nonlocal",
        "not", "or", "pass", "raise", "return", "try", "while", "with", "yield",
    };
    return kw;
}

const std::unordered_set<std::string>& python_builtins() {
    static const std::unordered_set<std::string> bi = {
        "abs", "all", "any", "bool", "bytes", "chr", "dict", "divmod", "enumerate",
        "filter", "float", "hash", "id", "input", "int", "isinstance", "iter",
        "len", "list", "map", "max", "min", "next", "object", "open", "ord",
        "pow", "print", "range", "repr", "reversed", "round", "set", "sorted",
        "str", "sum", "super", "tuple", "type", "zip",
        "Exception", "ValueError", "TypeError", "KeyError", "IndexError",
    };
    return bi;
}

bool is_ident_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c >= 0x80;
}

bool is_ident_cont(unsigned char c) {
    return std::isalnum(c) || c == '_' || c >= 0x80;
}

bool is_hspace(char c) { return c == ' ' || c == '\t' || c == '\f' || c == '\v'; }
bool is_vspace(char c) { return c == '\n' || c == '\r'; }

// String prefixes (r"", f"", rb"", ...) stay glued to the literal so the
// prefix letter is never mistaken for a renameable identifier.
bool is_string_prefix(std::string_view s) {
    if (s.size() > 2) return false;
    for (char c : s) {
        const char l = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (l != 'r' && l != 'b' && l != 'u' && l != 'f') return false;
    }
    return !s.empty();
}

// Multi-char operators, longest first within each leading char.
const std::array<std::string_view, 26>& multi_ops() {
    static const std::array<std::string_view, 26> ops = {
        "**=", "//=", ">>=", "<<=", "...",
        "==", "!=", "<=", ">=", "->", ":=", "**", "//", "<<", ">>",
        "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "@=", "&&", "||",
    };
    return ops;
}

bool is_op_char(char c) {
    constexpr std::string_view chars = "+-*/%=<>!&|^~@.,:;()[]{}?$`";
    return chars.find(c) != std::string_view::npos;
}

} // namespace

std::string_view token_kind_name(TokenKind kind) {
    switch (kind) {
        case TokenKind::Identifier: return "identifier";
        case TokenKind::Keyword: return "keyword";
        case TokenKind::Builtin: return "builtin";
        case TokenKind::Number: return "number";
        case TokenKind::String: return "string";
        case TokenKind::Comment: return "comment";
        case TokenKind::Whitespace: return "whitespace";
        case TokenKind::Newline: return "newline";
        case TokenKind::Operator: return "operator";
        case TokenKind::Other: return "other";
        case TokenKind::Word: return "word";
    }
    return "unknown";
}

Tokenizer::Tokenizer(Mode mode)
    : mode_(mode),
      keywords_(mode == Mode::CodeLexer ? python_keywords() : std::unordered_set<std::string>{}),
      builtins_(mode == Mode::CodeLexer ? python_builtins() : std::unordered_set<std::string>{}) {}

Tokenizer::Tokenizer(Mode mode, std::unordered_set<std::string> keywords,
                     std::unordered_set<std::string> builtins)
    : mode_(mode), keywords_(std::move(keywords)), builtins_(std::move(builtins)) {}

std::vector<Token> Tokenizer::tokenize(std::string_view text) const {
    return mode_ == Mode::CodeLexer ? lex_code(text) : lex_whitespace(text);
}

std::string Tokenizer::detokenize(const std::vector<Token>& tokens) {
    std::string out;
    size_t total = 0;
    for (const auto& t : tokens) total += t.text.size();
    out.reserve(total);
    for (const auto& t : tokens) out += t.text;
    return out;
}

std::vector<Token> Tokenizer::lex_whitespace(std::string_view text) const {
    std::vector<Token> out;
    size_t i = 0;
    while (i < text.size()) {
        const bool ws = std::isspace(static_cast<unsigned char>(text[i])) != 0;
        size_t j = i + 1;
        while (j < text.size() &&
               (std::isspace(static_cast<unsigned char>(text[j])) != 0) == ws)
            ++j;
        out.push_back({std::string(text.substr(i, j - i)),
                       ws ? TokenKind::Whitespace : TokenKind::Word});
        i = j;
    }
    return out;
}

std::vector<Token> Tokenizer::lex_code(std::string_view text) const {
    std::vector<Token> out;
    const size_t n = text.size();
    size_t i = 0;

    auto scan_string = [&](size_t start) -> size_t {
        // start points at the quote char; returns one past the closing quote
        // (or end of line / input for unterminated literals).
        const char quote = text[start];
        size_t j = start + 1;
        while (j < n) {
            if (text[j] == '\\' && j + 1 < n) { j += 2; continue; }
            if (text[j] == quote) return j + 1;
            if (is_vspace(text[j])) return j; // unterminated: stop at line end
            ++j;
        }
        return j;
    };

    while (i < n) {
        const char c = text[i];

        if (is_hspace(c)) {
            size_t j = i + 1;
            while (j < n && is_hspace(text[j])) ++j;
            out.push_back({std::string(text.substr(i, j - i)), TokenKind::Whitespace});
            i = j;
            continue;
        }
        if (is_vspace(c)) {
            size_t j = i + 1;
            while (j < n && is_vspace(text[j])) ++j;
            out.push_back({std::string(text.substr(i, j - i)), TokenKind::Newline});
            i = j;
            continue;
        }
        if (c == '#') {
            size_t j = i + 1;
            while (j < n && !is_vspace(text[j])) ++j;
            out.push_back({std::string(text.substr(i, j - i)), TokenKind::Comment});
            i = j;
            continue;
        }
        if (c == '"' || c == '\'') {
            const size_t j = scan_string(i);
            out.push_back({std::string(text.substr(i, j - i)), TokenKind::String});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i + 1;
            if (c == '0' && j < n && (text[j] == 'x' || text[j] == 'X' || text[j] == 'b' ||
                                      text[j] == 'B' || text[j] == 'o' || text[j] == 'O')) {
                ++j;
                while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                    ++j;
            } else {
                while (j < n && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                    ++j;
                if (j < n && text[j] == '.' && j + 1 < n &&
                    std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
                    ++j;
                    while (j < n && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                        ++j;
                }
                if (j < n && (text[j] == 'e' || text[j] == 'E')) {
                    size_t k = j + 1;
                    if (k < n && (text[k] == '+' || text[k] == '-')) ++k;
                    if (k < n && std::isdigit(static_cast<unsigned char>(text[k]))) {
                        j = k + 1;
                        while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
                    }
                }
                if (j < n && (text[j] == 'j' || text[j] == 'J')) ++j;
            }
            out.push_back({std::string(text.substr(i, j - i)), TokenKind::Number});
            i = j;
            continue;
        }
        if (is_ident_start(static_cast<unsigned char>(c))) {
            size_t j = i + 1;
            while (j < n && is_ident_cont(static_cast<unsigned char>(text[j]))) ++j;
            std::string word(text.substr(i, j - i));
            if (j < n && (text[j] == '"' || text[j] == '\'') && is_string_prefix(word)) {
                const size_t k = scan_string(j);
                out.push_back({word + std::string(text.substr(j, k - j)), TokenKind::String});
                i = k;
                continue;
            }
            TokenKind kind = TokenKind::Identifier;
            if (keywords_.count(word)) kind = TokenKind::Keyword;
            else if (builtins_.count(word)) kind = TokenKind::Builtin;
            out.push_back({std::move(word), kind});
            i = j;
            continue;
        }
        if (is_op_char(c)) {
            size_t matched = 1;
            for (const auto op : multi_ops()) {
                if (text.substr(i, op.size()) == op) { matched = op.size(); break; }
            }
            out.push_back({std::string(text.substr(i, matched)), TokenKind::Operator});
            i += matched;
            continue;
        }
        out.push_back({std::string(1, c), TokenKind::Other});
        ++i;
    }
    return out;
}

std::vector<int32_t> tokenize_to_ids(std::string_view text, const Tokenizer& tokenizer,
                                     const Vocabulary& vocab) {
    const auto tokens = tokenizer.tokenize(text);
    std::vector<int32_t> ids;
    ids.reserve(tokens.size());
    for (const auto& t : tokens) ids.push_back(vocab.id_or_unk(t.text));
    return ids;
}

std::string detokenize_ids(std::span<const int32_t> ids, const Vocabulary& vocab) {
    std::string out;
    for (const int32_t id : ids) out += vocab.token(id);
    return out;
}

} // namespace sweetmark
