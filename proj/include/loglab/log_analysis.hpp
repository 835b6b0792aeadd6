#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loglab/log_statement.hpp"
#include "loglab/method_extractor.hpp"
#include "loglab/token.hpp"

namespace loglab {

/// Decides which receiver identifiers count as loggers: any identifier whose
/// lowercased text contains "log", plus configured extra names.
struct ReceiverRule {
    std::vector<std::string> extra;

    bool is_logger_like(std::string_view identifier) const;
};

/// Finds every `recv . level ( args ) ;` statement, ordered by start index and
/// non-overlapping. The receiver must be a single logger-like identifier that
/// opens a statement (preceded by `;`, `{`, `}` or a `:` label), so
/// qualified receivers (`this.log.info`) and braceless bodies
/// (`if (x) log.info(..);`) are not reported.
std::vector<LogStatement> find_log_statements(std::span<const Token> tokens,
                                              const ReceiverRule& rule = {});
std::vector<LogStatement> find_log_statements(const MethodRecord& m, const ReceiverRule& rule = {});

/// |rank(a) - rank(b)|, in [0, 5].
int level_distance(LogLevel a, LogLevel b);

struct Removal {
    TokenSeq reduced;         // method without the statement (re-indexed)
    TokenSeq removed_tokens;  // contiguous span taken out, guard included
    LogStatement removed;     // indices refer to the original sequence
    std::size_t anchor = 0;   // reduced-token count preceding the removed span
    bool guard_removed = false;
};

/// Removes the k-th log statement. When it is the only statement of an
/// `if (recv.is<Level>Enabled()) { ... }` guard without an else branch, the
/// guard goes with it. Throws std::out_of_range for a bad k.
Removal remove_log(std::span<const Token> tokens, std::size_t k, const ReceiverRule& rule = {});
Removal remove_log(const MethodRecord& m, std::size_t k, const ReceiverRule& rule = {});

/// Puts `removed_tokens` back at `anchor`; inverse of remove_log.
TokenSeq reinsert(std::span<const Token> reduced, std::span<const Token> removed_tokens, std::size_t anchor);

/// Inserts a single `<LOG_STMT>` token before reduced[position].
/// Throws std::out_of_range when position > size.
TokenSeq insert_placeholder(std::span<const Token> reduced, std::size_t position);

enum class LocateStatus {
    Located,           // exactly one log statement inserted, nothing else changed
    Unrecognized,      // one call statement inserted, but not a valid log call
    Unchanged,         // prediction equals the input
    MultipleInsertions,
    NonLogEdit,        // non-log tokens were altered or deleted
    LexFailure,
};

std::string_view to_string(LocateStatus status);

struct InjectedLog {
    LogStatement statement;  // indices into the prediction's tokens
    std::size_t anchor = 0;  // input tokens preceding the inserted block
    std::vector<std::string> block;  // inserted token texts (guard included)
    bool guarded = false;
};

struct LocateResult {
    LocateStatus status = LocateStatus::NonLogEdit;
    std::optional<InjectedLog> injected;      // set iff status == Located
    std::optional<std::size_t> placement;     // anchor for Located/Unrecognized

    explicit operator bool() const { return injected.has_value(); }
};

/// Aligns `predicted` against `input` and recovers the one inserted log
/// statement and its anchor. When identical neighbouring tokens make the
/// anchor ambiguous, the candidate closest to `prefer` wins (lowest
/// otherwise).
LocateResult locate_injected_statement(std::span<const Token> input, std::string_view predicted,
                                       const ReceiverRule& rule = {},
                                       std::optional<std::size_t> prefer = std::nullopt);
LocateResult locate_injected_statement(std::span<const Token> input, std::span<const Token> predicted,
                                       const ReceiverRule& rule = {},
                                       std::optional<std::size_t> prefer = std::nullopt);

}  // namespace loglab
