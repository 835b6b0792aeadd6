#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loglab/dataset_builder.hpp"
#include "loglab/log_analysis.hpp"
#include "loglab/token.hpp"

namespace loglab {

/// Rule-based predictor. Injects `logger.error("<name> failed", <id>);` at
/// the head of the first `catch (T id)` block, or `logger.info("<name>");` as
/// the first body statement when there is no catch. The receiver is always
/// `logger`.
std::string predict_heuristic(std::span<const Token> input);
std::string predict_heuristic(std::string_view input_text);

/// Name of the declared method: the identifier before the first parameter
/// list, ignoring annotation arguments. Empty if none is found.
std::string method_name(std::span<const Token> tokens);

/// Sorted, de-duplicated token texts.
std::vector<std::string> token_bag(std::span<const Token> tokens);

/// |a ∩ b| / |a ∪ b| over sorted unique bags; 1 for two empty bags.
double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b);

struct RetrievalEntry {
    std::string instance_id;
    std::vector<std::string> bag;  // of the FT input
    TokenSeq block;                // removed statement, guard included
    std::size_t anchor = 0;
    std::size_t input_size = 0;

    double anchor_fraction() const {
        return input_size == 0 ? 0.0 : static_cast<double>(anchor) / static_cast<double>(input_size);
    }
};

class RetrievalIndex {
public:
    RetrievalIndex() = default;
    explicit RetrievalIndex(std::vector<RetrievalEntry> entries) : entries_(std::move(entries)) {}

    /// Indexes the train-split FT instances, in instance order.
    static RetrievalIndex build(const std::vector<DatasetInstance>& ft, const SplitAssignment& splits,
                                const ReceiverRule& rule = {});

    const std::vector<RetrievalEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    const ReceiverRule& rule() const { return rule_; }

    /// Ordinal of the most similar entry; ties go to the lower ordinal.
    /// Throws ConfigError when empty.
    std::size_t nearest(const std::vector<std::string>& bag) const;

private:
    std::vector<RetrievalEntry> entries_;
    ReceiverRule rule_;
};

/// Copies the nearest neighbour's statement into `input` at
/// round(anchor_fraction * |input|), moved to the closest insertion point
/// (lower on ties) whose result passes syntax_check. Throws ConfigError for an
/// empty index.
std::string predict_retrieval(const RetrievalIndex& index, std::span<const Token> input);
std::string predict_retrieval(const RetrievalIndex& index, std::string_view input_text);

}  // namespace loglab
