#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "loglab/log_statement.hpp"
#include "loglab/token.hpp"

namespace loglab {

/// One extracted Java method. `tokens` are re-indexed from 0; their line/col
/// still point into the original file.
struct MethodRecord {
    std::string id;  // content hash of the normalized token text
    std::string repo;
    std::string path;
    TokenSeq tokens;
    std::string raw_text;
    std::vector<LogStatement> log_statements;
};

struct ExtractionWarning {
    std::string path;
    int line = 0;
    std::string message;
};

struct ExtractionResult {
    std::vector<MethodRecord> methods;
    std::vector<ExtractionWarning> warnings;
};

/// Extracts every concrete method and constructor at class-body depth.
/// Bodies of anonymous classes, lambdas and local classes stay inside their
/// enclosing method. Throws LexError if the source does not lex.
ExtractionResult extract_methods(std::string_view source, std::string repo, std::string path);

/// Number of tokens composing a method, comments excluded. Placeholder tokens
/// are not counted.
std::size_t count_tokens(const MethodRecord& m);
std::size_t count_tokens(std::span<const Token> tokens);

/// FNV-1a 64 of the normalized text, as 16 lowercase hex digits.
std::string content_hash(std::string_view normalized);

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace loglab
