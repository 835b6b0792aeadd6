#include "loglab/method_extractor.hpp"

#include <cstdio>
#include <limits>
#include <optional>

#include "loglab/syntax_check.hpp"

namespace loglab {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

bool is(const Token& t, std::string_view text) {
    return t.text == text && t.kind != TokenKind::StringLiteral && t.kind != TokenKind::CharLiteral;
}

enum class TypeKind { None, Class, Enum };

class Extractor {
public:
    Extractor(std::string_view source, TokenSeq tokens, std::string repo, std::string path)
        : source_(source), toks_(std::move(tokens)), repo_(std::move(repo)), path_(std::move(path)) {
        match_braces();
    }

    ExtractionResult run() {
        scan_body(0, toks_.size(), /*is_enum=*/false, /*top_level=*/true);
        return std::move(result_);
    }

private:
    void match_braces() {
        brace_match_.assign(toks_.size(), kNone);
        std::vector<std::size_t> stack;
        for (std::size_t i = 0; i < toks_.size(); ++i) {
            if (is(toks_[i], "{")) {
                stack.push_back(i);
            } else if (is(toks_[i], "}")) {
                if (!stack.empty()) {
                    brace_match_[stack.back()] = i;
                    brace_match_[i] = stack.back();
                    stack.pop_back();
                }
            }
        }
    }

    // Paren matching is local: a stray paren inside one method must not
    // shift the pairing of signatures elsewhere in the file.
    std::size_t close_paren(std::size_t open, std::size_t limit) const {
        int depth = 0;
        for (std::size_t i = open; i < limit; ++i) {
            if (is(toks_[i], "(")) ++depth;
            else if (is(toks_[i], ")") && --depth == 0) return i;
        }
        return kNone;
    }

    std::size_t open_paren(std::size_t close, std::size_t floor) const {
        int depth = 0;
        for (std::size_t i = close + 1; i-- > floor;) {
            if (is(toks_[i], ")")) ++depth;
            else if (is(toks_[i], "(") && --depth == 0) return i;
        }
        return kNone;
    }

    void warn(std::size_t at, std::string message) {
        const int line = at < toks_.size() ? toks_[at].line : 0;
        result_.warnings.push_back({path_, line, std::move(message)});
    }

    // If `{` at `brace` closes a method header, returns the name token index.
    std::optional<std::size_t> method_name(std::size_t brace, std::size_t floor) const {
        if (brace == 0) return std::nullopt;
        std::size_t k = brace - 1;
        if (!is(toks_[k], ")")) {
            // optional `throws A, b.C<D>` clause
            while (k > floor) {
                const Token& t = toks_[k];
                const bool type_part = t.kind == TokenKind::Identifier || t.kind == TokenKind::Annotation ||
                                       is(t, ".") || is(t, ",") || is(t, "<") || is(t, ">") ||
                                       is(t, ">>") || is(t, ">>>") || is(t, "?") || is(t, "&");
                if (!type_part) break;
                --k;
            }
            if (!is(toks_[k], "throws") || k == floor) return std::nullopt;
            --k;
            if (!is(toks_[k], ")")) return std::nullopt;
        }
        const std::size_t open = open_paren(k, floor);
        if (open == kNone || open == floor) return std::nullopt;
        const std::size_t name = open - 1;
        if (toks_[name].kind != TokenKind::Identifier) return std::nullopt;
        if (name > floor && (is(toks_[name - 1], "new") || is(toks_[name - 1], "."))) return std::nullopt;
        return name;
    }

    void emit_method(std::size_t first, std::size_t last) {
        TokenSeq slice(toks_.begin() + static_cast<std::ptrdiff_t>(first),
                       toks_.begin() + static_cast<std::ptrdiff_t>(last) + 1);
        if (!brackets_balanced(slice)) {
            warn(first, "unbalanced brackets inside method body; method skipped");
            return;
        }
        reindex(slice);
        MethodRecord m;
        m.repo = repo_;
        m.path = path_;
        const std::size_t begin = slice.front().offset;
        const std::size_t end = slice.back().offset + slice.back().text.size();
        m.raw_text = std::string(source_.substr(begin, end - begin));
        m.id = content_hash(render(slice));
        m.tokens = std::move(slice);
        result_.methods.push_back(std::move(m));
    }

    // Walks the members of a class body (or the compilation unit when
    // `top_level`) in [begin, end).
    void scan_body(std::size_t begin, std::size_t end, bool is_enum, bool top_level) {
        std::size_t member_start = begin;
        bool saw_assign = false;
        TypeKind type = TypeKind::None;
        bool enum_constants = is_enum;

        auto reset = [&](std::size_t next) {
            member_start = next;
            saw_assign = false;
            type = TypeKind::None;
        };

        std::size_t i = begin;
        while (i < end) {
            const Token& t = toks_[i];
            const bool after_dot = i > begin && is(toks_[i - 1], ".");
            if (is(t, ";")) {
                enum_constants = false;
                reset(i + 1);
                ++i;
            } else if (is(t, "(")) {
                const std::size_t close = close_paren(i, end);
                if (close == kNone) {
                    warn(i, "unbalanced parentheses in class body; remaining methods skipped");
                    return;
                }
                i = close + 1;
            } else if (is(t, "=")) {
                saw_assign = true;
                ++i;
            } else if (!after_dot && !saw_assign &&
                       (is(t, "class") || is(t, "interface") || is(t, "@interface"))) {
                type = TypeKind::Class;
                ++i;
            } else if (!after_dot && !saw_assign && is(t, "enum")) {
                type = TypeKind::Enum;
                ++i;
            } else if (!after_dot && !saw_assign && t.kind == TokenKind::Identifier && t.text == "record" &&
                       i + 2 < end && toks_[i + 1].kind == TokenKind::Identifier &&
                       (is(toks_[i + 2], "(") || is(toks_[i + 2], "<"))) {
                type = TypeKind::Class;
                ++i;
            } else if (is(t, "{")) {
                const std::size_t close = brace_match_[i];
                if (close == kNone || close >= end) {
                    warn(i, "unbalanced braces in class body; its methods are skipped");
                    return;
                }
                if (enum_constants) {
                    // constant-specific class body
                    i = close + 1;
                    continue;
                }
                if (type != TypeKind::None) {
                    scan_body(i + 1, close, type == TypeKind::Enum, false);
                    reset(close + 1);
                } else if (!top_level && !saw_assign && method_name(i, member_start)) {
                    emit_method(member_start, close);
                    reset(close + 1);
                } else if (saw_assign) {
                    // field initializer: array literal, lambda or anonymous class
                } else {
                    // instance or static initializer block
                    reset(close + 1);
                }
                i = close + 1;
            } else if (is(t, "}")) {
                warn(i, "unmatched closing brace");
                reset(i + 1);
                ++i;
            } else {
                ++i;
            }
        }
    }

    std::string_view source_;
    TokenSeq toks_;
    std::string repo_;
    std::string path_;
    std::vector<std::size_t> brace_match_;
    ExtractionResult result_;
};

}  // namespace

ExtractionResult extract_methods(std::string_view source, std::string repo, std::string path) {
    TokenSeq tokens = tokenize(source);
    return Extractor(source, std::move(tokens), std::move(repo), std::move(path)).run();
}

std::size_t count_tokens(std::span<const Token> tokens) {
    std::size_t n = 0;
    for (const auto& t : tokens) {
        if (t.kind != TokenKind::Placeholder) ++n;
    }
    return n;
}

std::size_t count_tokens(const MethodRecord& m) {
    return count_tokens(m.tokens);
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string content_hash(std::string_view normalized) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(normalized)));
    return buf;
}

}  // namespace loglab
