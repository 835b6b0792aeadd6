#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loglab/errors.hpp"
#include "loglab/log_analysis.hpp"
#include "loglab/method_extractor.hpp"

namespace loglab {

enum class Task { P1, P2, FT };
std::string_view to_string(Task task);
std::optional<Task> parse_task(std::string_view name);

struct DatasetInstance {
    std::string instance_id;
    Task task = Task::FT;
    std::string method_id;
    std::optional<std::size_t> removed_index;  // absent for P1
    std::string input_text;                    // normalized token text
    std::string target_text;

    bool operator==(const DatasetInstance&) const = default;
};

enum class Split { Train, Eval, Test };
std::string_view to_string(Split split);
std::optional<Split> parse_split(std::string_view name);

using SplitAssignment = std::map<std::string, Split>;

inline constexpr std::size_t kMinMethodTokens = 10;
inline constexpr std::size_t kMaxMethodTokens = 512;  // exclusive

struct FilterStats {
    std::size_t too_short = 0;
    std::size_t too_long = 0;
    std::size_t duplicates = 0;
};

/// Keeps methods with 10 <= #tokens < 512, then drops every method whose
/// normalized token text was already seen (first occurrence wins).
std::vector<MethodRecord> filter_methods(std::vector<MethodRecord> records, FilterStats* stats = nullptr);

/// Denoising instance: floor(mask_ratio * #tokens) distinct tokens replaced by
/// `<extra_id_0>`, `<extra_id_1>`, ... left to right; the target lists each
/// sentinel followed by the token it hides. With `span_mask`, the same number
/// of tokens is hidden as contiguous spans (mean length 3), one sentinel per
/// span. Returns nullopt (skip) when nothing would be masked. Throws
/// std::invalid_argument if the method has log statements.
std::optional<DatasetInstance> build_p1(const MethodRecord& m, double mask_ratio, std::uint64_t seed,
                                        bool span_mask = false);

/// Number of tokens build_p1 masks for a method of `n` tokens.
std::size_t mask_count(std::size_t n, double mask_ratio);

/// Position task: input is the method without its k-th log statement, target
/// is that input with `<LOG_STMT>` at the removal anchor.
DatasetInstance build_p2(const MethodRecord& m, std::size_t k, const ReceiverRule& rule = {});

/// Full-statement task: same input as build_p2; target is the original
/// method, i.e. the input with the removed statement back at its anchor.
DatasetInstance build_ft(const MethodRecord& m, std::size_t k, const ReceiverRule& rule = {});

struct SplitRatios {
    double train = 0.8;
    double eval = 0.1;
    double test = 0.1;
};

/// Groups instances by method_id, shuffles the groups with `seed` and hands
/// each group to the split furthest below its target instance count.
/// Throws ConfigError if the ratios do not sum to 1 or there are fewer than
/// three groups.
SplitAssignment split(const std::vector<DatasetInstance>& instances, const SplitRatios& ratios,
                      std::uint64_t seed);

struct BuildOptions {
    std::uint64_t seed = 7;
    double mask_ratio = 0.15;
    bool span_mask = false;
    // Fraction of logged methods routed to P2; the rest feed FT. nullopt
    // feeds every logged method to both tasks.
    std::optional<double> p2_share = 0.5;
    SplitRatios ratios;
    ReceiverRule receivers;
    unsigned jobs = 1;
};

struct BuildStats {
    std::size_t input_methods = 0;
    FilterStats filter;
    std::size_t kept_methods = 0;
    std::size_t logged_methods = 0;
    std::size_t p2_methods = 0;
    std::size_t ft_methods = 0;
    std::size_t p1_skipped = 0;
};

struct Datasets {
    std::vector<DatasetInstance> p1;
    std::vector<DatasetInstance> p2;
    std::vector<DatasetInstance> ft;
    SplitAssignment ft_split;
    BuildStats stats;
};

Datasets build_datasets(std::vector<MethodRecord> records, const BuildOptions& options);

}  // namespace loglab
