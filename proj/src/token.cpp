#include "loglab/token.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace loglab {

namespace {

constexpr std::array<std::string_view, 53> kKeywords = {
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char",
    "class", "const", "continue", "default", "do", "double", "else", "enum",
    "extends", "final", "finally", "float", "for", "goto", "if", "implements",
    "import", "instanceof", "int", "interface", "long", "native", "new",
    "package", "private", "protected", "public", "return", "short", "static",
    "strictfp", "super", "switch", "synchronized", "this", "throw", "throws",
    "transient", "try", "void", "volatile", "while", "true", "false", "null",
};

// Longest first so that a linear scan implements maximal munch.
constexpr std::array<std::string_view, 38> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "->", "==", ">=", "<=", "!=", "&&",
    "||", "++", "--", "<<", ">>", "+=", "-=", "*=", "/=", "&=",
    "|=", "^=", "%=", "=", ">", "<", "!", "~", "?", ":",
    "+", "-", "*", "/", "&", "|", "^", "%",
};

bool ident_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool ident_part(unsigned char c) {
    return ident_start(c) || std::isdigit(c);
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    TokenSeq run() {
        if (src_.substr(0, 3) == "\xEF\xBB\xBF") {
            pos_ = 3;
        }
        while (pos_ < src_.size()) {
            const unsigned char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v' ||
                c == '\0') {
                advance(1);
            } else if (c == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && peek() != '\n') advance(1);
            } else if (c == '/' && peek(1) == '*') {
                block_comment();
            } else if (c == '"') {
                string_literal();
            } else if (c == '\'') {
                char_literal();
            } else if (std::isdigit(c) || (c == '.' && std::isdigit(peek(1)))) {
                number();
            } else if (ident_start(c)) {
                identifier();
            } else if (c == '@' && ident_start(peek(1))) {
                annotation();
            } else if (c == '<' && placeholder()) {
                // consumed
            } else {
                punctuation();
            }
        }
        return std::move(out_);
    }

private:
    unsigned char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? static_cast<unsigned char>(src_[pos_ + ahead]) : 0;
    }

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
        }
    }

    void emit(TokenKind kind, std::size_t start, int line, int col) {
        Token t;
        t.text = std::string(src_.substr(start, pos_ - start));
        t.kind = kind;
        t.line = line;
        t.col = col;
        t.index = out_.size();
        t.offset = start;
        out_.push_back(std::move(t));
    }

    void block_comment() {
        const int line = line_, col = col_;
        advance(2);
        while (pos_ < src_.size()) {
            if (peek() == '*' && peek(1) == '/') {
                advance(2);
                return;
            }
            advance(1);
        }
        throw LexError("unterminated block comment", line, col);
    }

    void string_literal() {
        const std::size_t start = pos_;
        const int line = line_, col = col_;
        if (peek(1) == '"' && peek(2) == '"') {
            advance(3);
            while (pos_ < src_.size()) {
                if (peek() == '\\') {
                    advance(2);
                } else if (peek() == '"' && peek(1) == '"' && peek(2) == '"') {
                    advance(3);
                    emit(TokenKind::StringLiteral, start, line, col);
                    return;
                } else {
                    advance(1);
                }
            }
            throw LexError("unterminated text block", line, col);
        }
        advance(1);
        while (pos_ < src_.size() && peek() != '\n') {
            if (peek() == '\\') {
                advance(2);
            } else if (peek() == '"') {
                advance(1);
                emit(TokenKind::StringLiteral, start, line, col);
                return;
            } else {
                advance(1);
            }
        }
        throw LexError("unterminated string literal", line, col);
    }

    void char_literal() {
        const std::size_t start = pos_;
        const int line = line_, col = col_;
        advance(1);
        while (pos_ < src_.size() && peek() != '\n') {
            if (peek() == '\\') {
                advance(2);
            } else if (peek() == '\'') {
                advance(1);
                emit(TokenKind::CharLiteral, start, line, col);
                return;
            } else {
                advance(1);
            }
        }
        throw LexError("unterminated char literal", line, col);
    }

    void number() {
        const std::size_t start = pos_;
        const int line = line_, col = col_;
        auto digits = [&](auto pred) {
            while (pred(peek()) || peek() == '_') advance(1);
        };
        auto is_dec = [](unsigned char c) { return std::isdigit(c) != 0; };
        auto is_hex = [](unsigned char c) { return std::isxdigit(c) != 0; };
        bool hex = false;
        if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
            hex = true;
            advance(2);
            digits(is_hex);
        } else if (peek() == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
            advance(2);
            digits([](unsigned char c) { return c == '0' || c == '1'; });
        } else {
            digits(is_dec);
        }
        if (peek() == '.' && (hex ? is_hex(peek(1)) || peek(1) == 'p' || peek(1) == 'P'
                                  : !ident_start(peek(1)) && peek(1) != '.')) {
            advance(1);
            digits(hex ? +[](unsigned char c) { return std::isxdigit(c) != 0; }
                       : +[](unsigned char c) { return std::isdigit(c) != 0; });
        }
        const unsigned char e = peek();
        const bool exponent = hex ? (e == 'p' || e == 'P') : (e == 'e' || e == 'E');
        if (exponent) {
            const unsigned char after = peek(1);
            const bool signed_exp = (after == '+' || after == '-') && std::isdigit(peek(2));
            if (std::isdigit(after) || signed_exp) {
                advance(signed_exp ? 2 : 1);
                digits(is_dec);
            }
        }
        const unsigned char s = peek();
        if (s == 'l' || s == 'L' || s == 'f' || s == 'F' || s == 'd' || s == 'D') {
            advance(1);
        }
        emit(TokenKind::NumberLiteral, start, line, col);
    }

    void identifier() {
        const std::size_t start = pos_;
        const int line = line_, col = col_;
        while (pos_ < src_.size() && ident_part(peek())) advance(1);
        const std::string_view word = src_.substr(start, pos_ - start);
        emit(is_java_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, start, line, col);
    }

    void annotation() {
        const std::size_t start = pos_;
        const int line = line_, col = col_;
        advance(1);
        while (pos_ < src_.size() && ident_part(peek())) advance(1);
        emit(TokenKind::Annotation, start, line, col);
    }

    bool placeholder() {
        const std::string_view rest = src_.substr(pos_);
        std::size_t len = 0;
        if (rest.starts_with(kLogPlaceholder)) {
            len = kLogPlaceholder.size();
        } else if (rest.starts_with("<extra_id_")) {
            std::size_t i = 10;
            while (i < rest.size() && std::isdigit(static_cast<unsigned char>(rest[i]))) ++i;
            if (i == 10 || i >= rest.size() || rest[i] != '>') return false;
            len = i + 1;
        } else {
            return false;
        }
        const std::size_t start = pos_;
        const int line = line_, col = col_;
        advance(len);
        emit(TokenKind::Placeholder, start, line, col);
        return true;
    }

    void punctuation() {
        const std::size_t start = pos_;
        const int line = line_, col = col_;
        const std::string_view rest = src_.substr(pos_);
        for (std::string_view sep : {std::string_view("..."), std::string_view("::")}) {
            if (rest.starts_with(sep)) {
                advance(sep.size());
                emit(TokenKind::Separator, start, line, col);
                return;
            }
        }
        const char c = rest.front();
        if (std::string_view("(){}[];,.@").find(c) != std::string_view::npos) {
            advance(1);
            emit(TokenKind::Separator, start, line, col);
            return;
        }
        for (std::string_view op : kOperators) {
            if (rest.starts_with(op)) {
                advance(op.size());
                emit(TokenKind::Operator, start, line, col);
                return;
            }
        }
        // Stray characters (`#`, `\`, backtick) become single-char operators.
        advance(1);
        emit(TokenKind::Operator, start, line, col);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    TokenSeq out_;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::Identifier: return "identifier";
        case TokenKind::Keyword: return "keyword";
        case TokenKind::StringLiteral: return "string-literal";
        case TokenKind::CharLiteral: return "char-literal";
        case TokenKind::NumberLiteral: return "number-literal";
        case TokenKind::Operator: return "operator";
        case TokenKind::Separator: return "separator";
        case TokenKind::Annotation: return "annotation";
        case TokenKind::Placeholder: return "placeholder";
    }
    return "unknown";
}

LexError::LexError(const std::string& what, int line, int col)
    : std::runtime_error(what + " at " + std::to_string(line) + ":" + std::to_string(col)),
      line_(line),
      col_(col) {}

TokenSeq tokenize(std::string_view source) {
    return Lexer(source).run();
}

std::string render(std::span<const Token> tokens) {
    std::string out;
    std::size_t total = tokens.size();
    for (const auto& t : tokens) total += t.text.size();
    out.reserve(total);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out.push_back(' ');
        out += tokens[i].text;
    }
    return out;
}

void reindex(TokenSeq& tokens) {
    for (std::size_t i = 0; i < tokens.size(); ++i) tokens[i].index = i;
}

Token make_placeholder(std::string text) {
    Token t;
    t.text = std::move(text);
    t.kind = TokenKind::Placeholder;
    t.line = 0;
    t.col = 0;
    return t;
}

bool is_java_keyword(std::string_view word) {
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

}  // namespace loglab
