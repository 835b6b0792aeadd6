#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace loglab {

/// Log4j severity chain, ranked 1 (Trace) .. 6 (Fatal).
enum class LogLevel { Trace = 1, Debug, Info, Warn, Error, Fatal };

inline constexpr LogLevel kAllLevels[] = {LogLevel::Trace, LogLevel::Debug, LogLevel::Info,
                                          LogLevel::Warn,  LogLevel::Error, LogLevel::Fatal};

constexpr int rank(LogLevel level) { return static_cast<int>(level); }

std::string_view to_string(LogLevel level);

/// Case-insensitive match against the six canonical level names.
std::optional<LogLevel> parse_level(std::string_view name);

/// A detected `recv . level ( args ) ;` call. `start` and `end` index the
/// receiver token and the terminating `;` in the owning token sequence.
struct LogStatement {
    LogLevel level = LogLevel::Info;
    std::size_t start = 0;
    std::size_t end = 0;
    std::string receiver;
    std::vector<std::string> message_tokens;

    std::size_t length() const { return end - start + 1; }
    bool operator==(const LogStatement&) const = default;
};

}  // namespace loglab
