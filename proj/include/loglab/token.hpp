#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace loglab {

enum class TokenKind {
    Identifier,
    Keyword,
    StringLiteral,
    CharLiteral,
    NumberLiteral,
    Operator,
    Separator,
    Annotation,
    // Synthetic tokens produced by the dataset builder: `<LOG_STMT>` and the
    // `<extra_id_N>` mask sentinels. Never produced from plain Java text.
    Placeholder,
};

std::string_view to_string(TokenKind kind);

struct Token {
    std::string text;
    TokenKind kind = TokenKind::Identifier;
    int line = 1;           // 1-based
    int col = 1;            // 1-based, in bytes
    std::size_t index = 0;  // ordinal within its sequence
    std::size_t offset = 0; // byte offset into the lexed source
};

using TokenSeq = std::vector<Token>;

class LexError : public std::runtime_error {
public:
    LexError(const std::string& what, int line, int col);
    int line() const noexcept { return line_; }
    int col() const noexcept { return col_; }

private:
    int line_;
    int col_;
};

inline constexpr std::string_view kLogPlaceholder = "<LOG_STMT>";

/// Lexes Java source into tokens. Comments and whitespace produce no tokens;
/// string, text-block and char literals are single tokens. Throws LexError on
/// unterminated literals or block comments.
TokenSeq tokenize(std::string_view source);

/// Joins token texts with single spaces. This is the normalized form used for
/// hashing, deduplication and every dataset text field.
std::string render(std::span<const Token> tokens);

/// Rewrites `index` so that it runs 0..n-1.
void reindex(TokenSeq& tokens);

Token make_placeholder(std::string text);

bool is_java_keyword(std::string_view word);

}  // namespace loglab
