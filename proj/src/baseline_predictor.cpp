#include "loglab/baseline_predictor.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "loglab/errors.hpp"
#include "loglab/syntax_check.hpp"

namespace loglab {

namespace {

bool is(const Token& t, std::string_view text) {
    return t.text == text && (t.kind == TokenKind::Separator || t.kind == TokenKind::Operator ||
                              t.kind == TokenKind::Keyword);
}

// Index of the bracket closing the one at `open`, or tokens.size().
std::size_t matching(std::span<const Token> tokens, std::size_t open) {
    const std::string_view o = tokens[open].text;
    const std::string_view c = o == "(" ? ")" : o == "{" ? "}" : "]";
    int depth = 0;
    for (std::size_t i = open; i < tokens.size(); ++i) {
        if (is(tokens[i], o)) ++depth;
        else if (is(tokens[i], c) && --depth == 0) return i;
    }
    return tokens.size();
}

// Skips `@Name`, `@a.b.Name` and an optional argument list.
std::size_t skip_annotation(std::span<const Token> tokens, std::size_t i) {
    ++i;
    while (i + 1 < tokens.size() && is(tokens[i], ".") && tokens[i + 1].kind == TokenKind::Identifier) i += 2;
    if (i < tokens.size() && is(tokens[i], "(")) i = matching(tokens, i) + 1;
    return i;
}

// Position of the `(` of the declaration's parameter list.
std::size_t parameter_list(std::span<const Token> tokens) {
    std::size_t i = 0;
    while (i < tokens.size()) {
        if (tokens[i].kind == TokenKind::Annotation) {
            i = skip_annotation(tokens, i);
            continue;
        }
        if (is(tokens[i], "(")) return i;
        if (is(tokens[i], "{")) break;
        ++i;
    }
    return tokens.size();
}

std::size_t body_open(std::span<const Token> tokens) {
    std::size_t i = parameter_list(tokens);
    if (i < tokens.size()) i = matching(tokens, i);
    for (; i < tokens.size(); ++i) {
        if (tokens[i].kind == TokenKind::Annotation) {
            i = skip_annotation(tokens, i) - 1;
            continue;
        }
        if (is(tokens[i], "{")) return i;
    }
    return tokens.size();
}

TokenSeq lex_statement(const std::string& text) { return tokenize(text); }

std::string join(const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) {
        if (!out.empty()) out += ' ';
        out += w;
    }
    return out;
}

std::string splice(std::span<const Token> input, std::size_t at, const TokenSeq& block) {
    TokenSeq out(input.begin(), input.begin() + static_cast<std::ptrdiff_t>(at));
    out.insert(out.end(), block.begin(), block.end());
    out.insert(out.end(), input.begin() + static_cast<std::ptrdiff_t>(at), input.end());
    return render(out);
}

}  // namespace

std::string method_name(std::span<const Token> tokens) {
    const std::size_t paren = parameter_list(tokens);
    if (paren == 0 || paren >= tokens.size()) return {};
    const Token& t = tokens[paren - 1];
    return t.kind == TokenKind::Identifier ? t.text : std::string();
}

std::string predict_heuristic(std::span<const Token> input) {
    std::string name = method_name(input);
    if (name.empty()) name = "method";

    for (std::size_t i = 0; i + 1 < input.size(); ++i) {
        if (!(input[i].kind == TokenKind::Keyword && input[i].text == "catch") || !is(input[i + 1], "(")) continue;
        const std::size_t close = matching(input, i + 1);
        if (close >= input.size() || close < i + 3) continue;
        if (close + 1 >= input.size() || !is(input[close + 1], "{")) continue;
        const Token& id = input[close - 1];
        if (id.kind != TokenKind::Identifier) continue;
        return splice(input, close + 2,
                      lex_statement("logger.error(\"" + name + " failed\", " + id.text + ");"));
    }

    const std::size_t open = body_open(input);
    if (open >= input.size()) return render(input);
    return splice(input, open + 1, lex_statement("logger.info(\"" + name + "\");"));
}

std::string predict_heuristic(std::string_view input_text) {
    const TokenSeq tokens = tokenize(input_text);
    return predict_heuristic(std::span<const Token>(tokens));
}

std::vector<std::string> token_bag(std::span<const Token> tokens) {
    std::vector<std::string> bag;
    bag.reserve(tokens.size());
    for (const auto& t : tokens) bag.push_back(t.text);
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    return bag;
}

namespace {

std::pair<std::size_t, std::size_t> overlap(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::size_t common = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else {
            ++common;
            ++i;
            ++j;
        }
    }
    return {common, a.size() + b.size() - common};
}

}  // namespace

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    const auto [common, all] = overlap(a, b);
    if (all == 0) return 1.0;
    return static_cast<double>(common) / static_cast<double>(all);
}

RetrievalIndex RetrievalIndex::build(const std::vector<DatasetInstance>& ft, const SplitAssignment& splits,
                                     const ReceiverRule& rule) {
    std::vector<RetrievalEntry> entries;
    for (const auto& inst : ft) {
        const auto it = splits.find(inst.instance_id);
        if (it == splits.end() || it->second != Split::Train) continue;
        const TokenSeq input = tokenize(inst.input_text);
        const LocateResult found = locate_injected_statement(input, inst.target_text, rule);
        if (!found) continue;
        RetrievalEntry e;
        e.instance_id = inst.instance_id;
        e.bag = token_bag(input);
        e.block = tokenize(join(found.injected->block));
        e.anchor = found.injected->anchor;
        e.input_size = input.size();
        entries.push_back(std::move(e));
    }
    RetrievalIndex index(std::move(entries));
    index.rule_ = rule;
    return index;
}

std::size_t RetrievalIndex::nearest(const std::vector<std::string>& bag) const {
    if (entries_.empty()) throw ConfigError("retrieval index is empty: no train-split FT instances");
    std::size_t best = 0;
    std::size_t best_common = 0, best_all = 0;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        auto [common, all] = overlap(bag, entries_[k].bag);
        if (all == 0) common = all = 1;
        // common/all > best_common/best_all, compared exactly.
        if (k == 0 || common * best_all > best_common * all) {
            best = k;
            best_common = common;
            best_all = all;
        }
    }
    return best;
}

std::string predict_retrieval(const RetrievalIndex& index, std::span<const Token> input) {
    const RetrievalEntry& e = index.entries()[index.nearest(token_bag(input))];
    const double target = std::round(e.anchor_fraction() * static_cast<double>(input.size()));
    const auto goal = static_cast<std::size_t>(std::max(0.0, target));

    std::vector<std::size_t> points = insertion_points(input);
    std::stable_sort(points.begin(), points.end(), [goal](std::size_t a, std::size_t b) {
        const std::size_t da = a > goal ? a - goal : goal - a;
        const std::size_t db = b > goal ? b - goal : goal - b;
        return da < db;
    });
    for (std::size_t p : points) {
        std::string candidate = splice(input, p, e.block);
        if (syntax_check(candidate) && locate_injected_statement(input, candidate, index.rule())) return candidate;
    }
    return predict_heuristic(input);
}

std::string predict_retrieval(const RetrievalIndex& index, std::string_view input_text) {
    const TokenSeq tokens = tokenize(input_text);
    return predict_retrieval(index, std::span<const Token>(tokens));
}

}  // namespace loglab
