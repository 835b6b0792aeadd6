#include "loglab/syntax_check.hpp"

#include <map>
#include <optional>

namespace loglab {

namespace {

enum class Block { None, Statement, Initializer, ClassBody, Switch };

bool is(const Token& t, std::string_view text) {
    return t.text == text && t.kind != TokenKind::StringLiteral && t.kind != TokenKind::CharLiteral;
}

bool is_any(const Token& t, std::initializer_list<std::string_view> texts) {
    for (auto s : texts) {
        if (is(t, s)) return true;
    }
    return false;
}

struct Frame {
    char open;
    Block block;
    std::size_t open_index;
    std::size_t stmt_start;
};

struct Structure {
    std::vector<Block> block;            // per `{` and its matching `}`
    std::vector<std::size_t> partner;    // matching bracket index
};

bool declares_type(std::span<const Token> toks, std::size_t from, std::size_t to) {
    for (std::size_t k = from; k < to; ++k) {
        const bool after_dot = k > 0 && is(toks[k - 1], ".");
        if (after_dot) continue;
        if (is_any(toks[k], {"class", "interface", "enum", "@interface"})) return true;
        if (toks[k].kind == TokenKind::Identifier && toks[k].text == "record" && k + 1 < to &&
            toks[k + 1].kind == TokenKind::Identifier)
            return true;
    }
    return false;
}

Block classify(std::span<const Token> toks, std::size_t i, const std::vector<Frame>& stack,
               const std::vector<std::size_t>& partner) {
    const Frame* enclosing = stack.empty() ? nullptr : &stack.back();
    const bool member_level = !enclosing || enclosing->block == Block::ClassBody;
    if (i == 0) return Block::Statement;
    const Token& prev = toks[i - 1];

    if (is(prev, "->")) return Block::Statement;
    if (enclosing && (enclosing->open == '(' || enclosing->open == '[')) return Block::Initializer;
    if (enclosing && enclosing->block == Block::Initializer) return Block::Initializer;
    if (is_any(prev, {"=", "]"})) return Block::Initializer;
    if (is(prev, ")")) {
        const std::size_t open = partner[i - 1];
        if (open > 0) {
            const Token& head = toks[open - 1];
            if (is(head, "switch")) return Block::Switch;
            if (is_any(head, {"if", "for", "while", "catch", "synchronized", "try"})) return Block::Statement;
        }
        return member_level ? Block::Statement : Block::ClassBody;
    }
    if (is_any(prev, {"else", "try", "finally", "do", "static", "{", ";", "}", ":"})) {
        return Block::Statement;
    }
    const std::size_t from = enclosing ? enclosing->stmt_start : 0;
    if (declares_type(toks, from, i)) return Block::ClassBody;
    return Block::Statement;
}

// Pairs brackets and classifies every brace; nullopt if nesting is broken.
std::optional<Structure> analyze(std::span<const Token> toks) {
    Structure s;
    s.block.assign(toks.size(), Block::None);
    s.partner.assign(toks.size(), 0);
    std::vector<Frame> stack;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        const Token& t = toks[i];
        if (t.kind != TokenKind::Separator) continue;
        const char c = t.text.size() == 1 ? t.text[0] : '\0';
        if (c == '(' || c == '[') {
            stack.push_back({c, Block::None, i, i + 1});
        } else if (c == '{') {
            const Block b = classify(toks, i, stack, s.partner);
            s.block[i] = b;
            stack.push_back({'{', b, i, i + 1});
        } else if (c == ')' || c == ']' || c == '}') {
            const char want = c == ')' ? '(' : c == ']' ? '[' : '{';
            if (stack.empty() || stack.back().open != want) return std::nullopt;
            const Frame f = stack.back();
            stack.pop_back();
            s.partner[i] = f.open_index;
            s.partner[f.open_index] = i;
            if (c == '}') {
                s.block[i] = f.block;
                if (!stack.empty()) stack.back().stmt_start = i + 1;
            }
        } else if (c == ';') {
            if (!stack.empty() && stack.back().open == '{') stack.back().stmt_start = i + 1;
        }
    }
    if (!stack.empty()) return std::nullopt;
    return s;
}

bool terminates_statement(std::span<const Token> toks, const Structure& s, std::size_t i) {
    const Token& t = toks[i];
    if (is_any(t, {";", "{", ":"})) return true;
    if (is(t, "}")) return s.block[i] != Block::Initializer;
    return false;
}

}  // namespace

bool brackets_balanced(std::span<const Token> tokens) {
    std::vector<char> stack;
    for (const auto& t : tokens) {
        if (t.kind != TokenKind::Separator || t.text.size() != 1) continue;
        const char c = t.text[0];
        if (c == '(' || c == '[' || c == '{') {
            stack.push_back(c);
        } else if (c == ')' || c == ']' || c == '}') {
            const char want = c == ')' ? '(' : c == ']' ? '[' : '{';
            if (stack.empty() || stack.back() != want) return false;
            stack.pop_back();
        }
    }
    return stack.empty();
}

bool syntax_check(std::span<const Token> toks) {
    if (toks.empty() || !is(toks.back(), "}")) return false;
    for (const auto& t : toks) {
        if (t.kind == TokenKind::Placeholder) return false;
    }
    const auto s = analyze(toks);
    if (!s) return false;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (!is(toks[i], "}")) continue;
        const Block b = s->block[i];
        if (b == Block::Initializer) continue;
        if (s->partner[i] + 1 == i) continue;  // empty block
        if (!terminates_statement(toks, *s, i - 1)) return false;
    }
    return true;
}

bool syntax_check(std::string_view method_text) {
    try {
        return syntax_check(tokenize(method_text));
    } catch (const LexError&) {
        return false;
    }
}

std::vector<std::size_t> insertion_points(std::span<const Token> toks) {
    std::vector<std::size_t> points;
    const auto s = analyze(toks);
    if (!s || toks.size() < 2) return points;

    // Switch bodies take statements only inside `case X :` groups.
    struct SwitchBody {
        bool in_label = false;
        bool grouped = false;
        bool arrows = false;
    };
    std::map<std::size_t, SwitchBody> switches;

    // Innermost enclosing bracket for every gap p (between toks[p-1], toks[p]).
    std::vector<std::size_t> open_stack;
    for (std::size_t p = 1; p < toks.size(); ++p) {
        const Token& prev = toks[p - 1];
        if (prev.kind == TokenKind::Separator && prev.text.size() == 1) {
            const char c = prev.text[0];
            if (c == '(' || c == '[' || c == '{') open_stack.push_back(p - 1);
            else if (c == ')' || c == ']' || c == '}') open_stack.pop_back();
        }
        if (open_stack.empty()) continue;
        const std::size_t encl = open_stack.back();
        if (!is(toks[encl], "{")) continue;
        const Token& next = toks[p];
        const auto closes_block = [&] {
            const Block closed = s->block[p - 1];
            return (closed == Block::Statement || closed == Block::Switch) &&
                   !is_any(next, {"else", "catch", "finally", "while", ";", ")", ",", "."});
        };

        if (s->block[encl] == Block::Switch) {
            SwitchBody& sw = switches[encl];
            bool ok = false;
            if (is_any(prev, {"case", "default"}) && !sw.in_label) {
                sw.in_label = true;
            } else if (sw.in_label && is(prev, "->")) {
                sw.in_label = false;
                sw.arrows = true;
            } else if (sw.in_label && is(prev, ":")) {
                sw.in_label = false;
                sw.grouped = true;
                ok = true;
            } else if (!sw.in_label && sw.grouped && is(prev, ";")) {
                ok = true;
            } else if (!sw.in_label && sw.grouped && is(prev, "}")) {
                ok = closes_block();
            }
            if (ok && !sw.arrows) points.push_back(p);
            continue;
        }
        if (s->block[encl] != Block::Statement) continue;

        bool ok = false;
        if (is(prev, "{")) {
            ok = true;
        } else if (is(prev, ";")) {
            ok = true;
        } else if (is(prev, "}")) {
            ok = closes_block();
        }
        if (ok) points.push_back(p);
    }
    return points;
}

}  // namespace loglab
