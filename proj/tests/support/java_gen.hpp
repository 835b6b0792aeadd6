#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "loglab/log_statement.hpp"
#include "loglab/random.hpp"

namespace loglab::testkit {

struct GenOptions {
    std::size_t logs = 1;
    std::size_t min_statements = 2;
    std::size_t max_statements = 7;
    int max_depth = 3;
    double guard_chance = 0.2;
    bool with_catch = false;  // force a try/catch in the body
    std::vector<std::string> receivers = {"logger", "LOG", "log"};
};

struct GeneratedMethod {
    std::string name;
    std::string text;
    std::string receiver;
    std::vector<LogLevel> levels;  // in source order
    std::size_t guarded = 0;
};

/// Random but syntactically valid Java methods with a known number of log
/// statements. Identifiers never contain "log", so the only logger-like
/// receivers are the chosen one.
class JavaGenerator {
public:
    explicit JavaGenerator(std::uint64_t seed) : rng_(seed, "java-gen") {}

    GeneratedMethod method(const GenOptions& options);

    /// `public class <name> { ... }` holding the given method texts.
    static std::string class_source(const std::string& name, const std::vector<std::string>& methods);

    Rng& rng() { return rng_; }

private:
    Rng rng_;
    std::size_t counter_ = 0;
};

/// `void pad ( ) { ; ; ... }` with exactly n >= 6 tokens.
std::string method_with_tokens(std::size_t n, const std::string& name = "pad");

}  // namespace loglab::testkit
