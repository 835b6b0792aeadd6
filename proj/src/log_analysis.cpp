#include "loglab/log_analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace loglab {

namespace {

bool is(const Token& t, std::string_view text) {
    return t.text == text && t.kind != TokenKind::StringLiteral && t.kind != TokenKind::CharLiteral;
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool opens_statement(std::span<const Token> toks, std::size_t i) {
    if (i == 0) return true;
    const Token& prev = toks[i - 1];
    return is(prev, ";") || is(prev, "{") || is(prev, "}") || is(prev, ":");
}

// Index of the `)` closing the `(` at `open`, or npos.
std::size_t close_paren(std::span<const Token> toks, std::size_t open) {
    int depth = 0;
    for (std::size_t i = open; i < toks.size(); ++i) {
        if (is(toks[i], "(")) ++depth;
        else if (is(toks[i], ")") && --depth == 0) return i;
    }
    return std::string_view::npos;
}

// `recv . level ( args ) ;` starting at i, regardless of statement context.
std::optional<LogStatement> match_log_call(std::span<const Token> toks, std::size_t i, const ReceiverRule& rule) {
    if (i + 5 >= toks.size()) return std::nullopt;
    const Token& recv = toks[i];
    if (recv.kind != TokenKind::Identifier || !rule.is_logger_like(recv.text)) return std::nullopt;
    if (!is(toks[i + 1], ".") || toks[i + 2].kind != TokenKind::Identifier || !is(toks[i + 3], "(")) {
        return std::nullopt;
    }
    const auto level = parse_level(toks[i + 2].text);
    if (!level) return std::nullopt;
    const std::size_t close = close_paren(toks, i + 3);
    if (close == std::string_view::npos || close + 1 >= toks.size() || !is(toks[close + 1], ";")) {
        return std::nullopt;
    }
    LogStatement s;
    s.level = *level;
    s.start = i;
    s.end = close + 1;
    s.receiver = recv.text;
    for (std::size_t k = i + 4; k < close; ++k) s.message_tokens.push_back(toks[k].text);
    return s;
}

bool is_enabled_check(std::string_view name) {
    const std::string l = lower(name);
    if (!l.starts_with("is") || !l.ends_with("enabled") || l.size() <= 9) return false;
    return parse_level(std::string_view(l).substr(2, l.size() - 9)).has_value();
}

// `if ( recv . isXEnabled ( ) ) {` occupying the 9 tokens before `start`.
bool guard_before(std::span<const Token> toks, std::size_t start, const ReceiverRule& rule) {
    if (start < 9) return false;
    const std::size_t g = start - 9;
    return is(toks[g], "if") && is(toks[g + 1], "(") && toks[g + 2].kind == TokenKind::Identifier &&
           rule.is_logger_like(toks[g + 2].text) && is(toks[g + 3], ".") &&
           is_enabled_check(toks[g + 4].text) && is(toks[g + 5], "(") && is(toks[g + 6], ")") &&
           is(toks[g + 7], ")") && is(toks[g + 8], "{");
}

enum class Shape { Log, GuardedLog, Call, Multiple, Other };

struct BlockShape {
    Shape shape = Shape::Other;
    std::optional<LogStatement> statement;  // relative to the block
};

bool is_call_statement(std::span<const Token> b) {
    // name (. name)* ( args ) ;
    if (b.size() < 4) return false;
    std::size_t i = 0;
    auto name = [&](const Token& t) {
        return t.kind == TokenKind::Identifier || is(t, "this") || is(t, "super");
    };
    if (!name(b[i])) return false;
    ++i;
    while (i + 1 < b.size() && is(b[i], ".") && name(b[i + 1])) i += 2;
    if (i >= b.size() || !is(b[i], "(")) return false;
    const std::size_t close = close_paren(b, i);
    return close == b.size() - 2 && is(b.back(), ";");
}

BlockShape classify_single(std::span<const Token> b, const ReceiverRule& rule) {
    BlockShape out;
    if (auto s = match_log_call(b, 0, rule); s && s->end == b.size() - 1) {
        out.shape = Shape::Log;
        out.statement = s;
        return out;
    }
    if (b.size() > 10 && guard_before(b, 9, rule) && is(b.back(), "}")) {
        if (auto s = match_log_call(b, 9, rule); s && s->end == b.size() - 2) {
            out.shape = Shape::GuardedLog;
            out.statement = s;
            return out;
        }
    }
    if (is_call_statement(b)) out.shape = Shape::Call;
    return out;
}

BlockShape classify_block(std::span<const Token> b, const ReceiverRule& rule) {
    BlockShape single = classify_single(b, rule);
    if (single.shape != Shape::Other) return single;
    // Several statements back to back?
    std::size_t pieces = 0, from = 0;
    int depth = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (is(b[i], "(") || is(b[i], "{") || is(b[i], "[")) ++depth;
        else if (is(b[i], ")") || is(b[i], "}") || is(b[i], "]")) --depth;
        const bool boundary = depth == 0 && (is(b[i], ";") || (is(b[i], "}") && i + 1 < b.size()));
        if (boundary || i + 1 == b.size()) {
            if (classify_single(b.subspan(from, i + 1 - from), rule).shape == Shape::Other) return single;
            ++pieces;
            from = i + 1;
        }
    }
    if (pieces >= 2) single.shape = Shape::Multiple;
    return single;
}

std::size_t pick(const std::vector<std::size_t>& candidates, std::optional<std::size_t> prefer) {
    if (!prefer) return candidates.front();
    std::size_t best = candidates.front();
    auto dist = [&](std::size_t p) { return p > *prefer ? p - *prefer : *prefer - p; };
    for (std::size_t p : candidates) {
        if (dist(p) < dist(best)) best = p;
    }
    return best;
}

}  // namespace

std::string_view to_string(LogLevel level) {
    switch (level) {
        case LogLevel::Trace: return "Trace";
        case LogLevel::Debug: return "Debug";
        case LogLevel::Info: return "Info";
        case LogLevel::Warn: return "Warn";
        case LogLevel::Error: return "Error";
        case LogLevel::Fatal: return "Fatal";
    }
    return "Info";
}

std::optional<LogLevel> parse_level(std::string_view name) {
    const std::string l = lower(name);
    for (LogLevel level : kAllLevels) {
        if (l == lower(to_string(level))) return level;
    }
    return std::nullopt;
}

std::string_view to_string(LocateStatus status) {
    switch (status) {
        case LocateStatus::Located: return "located";
        case LocateStatus::Unrecognized: return "unrecognized-statement";
        case LocateStatus::Unchanged: return "unchanged";
        case LocateStatus::MultipleInsertions: return "multiple-insertions";
        case LocateStatus::NonLogEdit: return "non-log-edit";
        case LocateStatus::LexFailure: return "lex-failure";
    }
    return "unknown";
}

bool ReceiverRule::is_logger_like(std::string_view identifier) const {
    if (lower(identifier).find("log") != std::string::npos) return true;
    return std::find(extra.begin(), extra.end(), identifier) != extra.end();
}

std::vector<LogStatement> find_log_statements(std::span<const Token> tokens, const ReceiverRule& rule) {
    std::vector<LogStatement> found;
    std::size_t i = 0;
    while (i + 5 < tokens.size()) {
        if (opens_statement(tokens, i)) {
            if (auto s = match_log_call(tokens, i, rule)) {
                i = s->end + 1;
                found.push_back(std::move(*s));
                continue;
            }
        }
        ++i;
    }
    return found;
}

std::vector<LogStatement> find_log_statements(const MethodRecord& m, const ReceiverRule& rule) {
    return find_log_statements(m.tokens, rule);
}

int level_distance(LogLevel a, LogLevel b) {
    return std::abs(rank(a) - rank(b));
}

Removal remove_log(std::span<const Token> tokens, std::size_t k, const ReceiverRule& rule) {
    auto statements = find_log_statements(tokens, rule);
    if (k >= statements.size()) {
        throw std::out_of_range("log statement index " + std::to_string(k) + " out of range (method has " +
                                std::to_string(statements.size()) + ")");
    }
    Removal r;
    r.removed = statements[k];
    std::size_t first = r.removed.start;
    std::size_t last = r.removed.end;

    const std::size_t after = last + 1;
    if (guard_before(tokens, first, rule) && after < tokens.size() && is(tokens[after], "}") &&
        opens_statement(tokens, first - 9) && (first - 9 == 0 || !is(tokens[first - 10], "else")) &&
        (after + 1 >= tokens.size() || !is(tokens[after + 1], "else"))) {
        first -= 9;
        last = after;
        r.guard_removed = true;
    }

    r.anchor = first;
    r.removed_tokens.assign(tokens.begin() + static_cast<std::ptrdiff_t>(first),
                            tokens.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    r.reduced.reserve(tokens.size() - r.removed_tokens.size());
    r.reduced.insert(r.reduced.end(), tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(first));
    r.reduced.insert(r.reduced.end(), tokens.begin() + static_cast<std::ptrdiff_t>(last) + 1, tokens.end());
    reindex(r.reduced);
    return r;
}

Removal remove_log(const MethodRecord& m, std::size_t k, const ReceiverRule& rule) {
    return remove_log(m.tokens, k, rule);
}

TokenSeq reinsert(std::span<const Token> reduced, std::span<const Token> removed_tokens, std::size_t anchor) {
    if (anchor > reduced.size()) throw std::out_of_range("reinsert anchor out of range");
    TokenSeq out;
    out.reserve(reduced.size() + removed_tokens.size());
    out.insert(out.end(), reduced.begin(), reduced.begin() + static_cast<std::ptrdiff_t>(anchor));
    out.insert(out.end(), removed_tokens.begin(), removed_tokens.end());
    out.insert(out.end(), reduced.begin() + static_cast<std::ptrdiff_t>(anchor), reduced.end());
    reindex(out);
    return out;
}

TokenSeq insert_placeholder(std::span<const Token> reduced, std::size_t position) {
    if (position > reduced.size()) {
        throw std::out_of_range("placeholder position " + std::to_string(position) + " beyond length " +
                                std::to_string(reduced.size()));
    }
    const Token tag = make_placeholder(std::string(kLogPlaceholder));
    return reinsert(reduced, std::span<const Token>(&tag, 1), position);
}

LocateResult locate_injected_statement(std::span<const Token> input, std::span<const Token> pred,
                                       const ReceiverRule& rule, std::optional<std::size_t> prefer) {
    LocateResult result;
    const std::size_t n = input.size();
    const std::size_t m = pred.size();

    auto same = [&](std::size_t i, std::size_t j) { return input[i].text == pred[j].text; };

    if (m == n) {
        bool equal = true;
        for (std::size_t i = 0; i < n && equal; ++i) equal = same(i, i);
        result.status = equal ? LocateStatus::Unchanged : LocateStatus::NonLogEdit;
        return result;
    }
    if (m < n) {
        result.status = LocateStatus::NonLogEdit;
        return result;
    }
    // Only insertions happened iff the input is a subsequence of the prediction.
    std::size_t i = 0;
    for (std::size_t j = 0; j < m && i < n; ++j) {
        if (same(i, j)) ++i;
    }
    if (i < n) {
        result.status = LocateStatus::NonLogEdit;
        return result;
    }

    std::size_t prefix = 0;
    while (prefix < n && same(prefix, prefix)) ++prefix;
    std::size_t suffix = 0;
    while (suffix < n && same(n - 1 - suffix, m - 1 - suffix)) ++suffix;
    if (n - suffix > prefix) {
        result.status = LocateStatus::MultipleInsertions;
        return result;
    }

    const std::size_t len = m - n;
    std::vector<std::size_t> logs, calls;
    std::vector<BlockShape> shapes(prefix + 1);
    bool multiple = false;
    for (std::size_t p = n - suffix; p <= prefix; ++p) {
        shapes[p] = classify_block(pred.subspan(p, len), rule);
        switch (shapes[p].shape) {
            case Shape::Log:
            case Shape::GuardedLog: logs.push_back(p); break;
            case Shape::Call: calls.push_back(p); break;
            case Shape::Multiple: multiple = true; break;
            case Shape::Other: break;
        }
    }

    if (!logs.empty()) {
        const std::size_t p = pick(logs, prefer);
        InjectedLog inj;
        inj.anchor = p;
        inj.guarded = shapes[p].shape == Shape::GuardedLog;
        inj.statement = *shapes[p].statement;
        inj.statement.start += p;
        inj.statement.end += p;
        for (std::size_t k = p; k < p + len; ++k) inj.block.push_back(pred[k].text);
        result.status = LocateStatus::Located;
        result.placement = p;
        result.injected = std::move(inj);
    } else if (!calls.empty()) {
        result.status = LocateStatus::Unrecognized;
        result.placement = pick(calls, prefer);
    } else {
        result.status = multiple ? LocateStatus::MultipleInsertions : LocateStatus::NonLogEdit;
    }
    return result;
}

LocateResult locate_injected_statement(std::span<const Token> input, std::string_view predicted,
                                       const ReceiverRule& rule, std::optional<std::size_t> prefer) {
    TokenSeq pred;
    try {
        pred = tokenize(predicted);
    } catch (const LexError&) {
        LocateResult r;
        r.status = LocateStatus::LexFailure;
        return r;
    }
    return locate_injected_statement(input, pred, rule, prefer);
}

}  // namespace loglab
