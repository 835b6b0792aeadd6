#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "loglab/dataset_builder.hpp"
#include "loglab/log_analysis.hpp"
#include "loglab/log_statement.hpp"

namespace loglab {

struct EvaluationOutcome {
    std::string instance_id;
    bool missing = false;  // no prediction supplied
    bool valid_syntax = false;
    bool located = false;
    LocateStatus status = LocateStatus::NonLogEdit;
    bool level_correct = false;
    bool position_correct = false;
    bool message_correct = false;
    std::optional<int> level_distance;
    std::optional<std::size_t> position_distance;   // located predictions only
    std::optional<std::size_t> placement_distance;  // also counts calls with an unknown level
    double bleu4 = 0.0;
    std::optional<LogLevel> pred_level;
    LogLevel ref_level = LogLevel::Info;
    std::size_t message_chars = 0;

    bool all_correct() const { return level_correct && position_correct && message_correct; }
    bool operator==(const EvaluationOutcome&) const = default;
};

/// The statement an FT instance expects, recovered from its input/target pair.
struct Reference {
    TokenSeq input;
    LogStatement statement;  // indices into the target tokens
    std::vector<std::string> block;
    std::size_t anchor = 0;
};

/// Throws std::invalid_argument if the instance is not FT or its target is not
/// its input plus one log statement.
Reference make_reference(const DatasetInstance& instance, const ReceiverRule& rule = {});

EvaluationOutcome score(const DatasetInstance& instance, std::string_view prediction_text,
                        const ReceiverRule& rule = {});
EvaluationOutcome score(const Reference& ref, std::string_view instance_id, std::string_view prediction_text,
                        const ReceiverRule& rule = {});
EvaluationOutcome score_missing(const DatasetInstance& instance, const ReceiverRule& rule = {});

/// Code points in the reference arguments joined by single spaces.
std::size_t message_chars(const LogStatement& statement);

struct Prediction {
    std::string instance_id;
    std::string text;
};

struct ScoredRun {
    std::vector<EvaluationOutcome> outcomes;  // one per instance, instance order
    std::size_t unknown_predictions = 0;      // ids not among the instances
    std::size_t duplicate_predictions = 0;    // repeats of an id; first one wins
};

ScoredRun score_all(const std::vector<DatasetInstance>& instances, const std::vector<Prediction>& predictions,
                    const ReceiverRule& rule = {}, unsigned jobs = 1);

struct CountRow {
    std::string label;
    std::size_t count = 0;
    double percent = 0.0;
};

struct LevelRow {
    LogLevel level = LogLevel::Info;
    std::size_t instances = 0;
    std::size_t level_correct = 0;
    std::size_t all_correct = 0;
    double level_percent = 0.0;
    double all_percent = 0.0;
    double mean_message_chars = 0.0;
};

struct DistanceBuckets {
    std::size_t zero = 0;
    std::size_t upto_50 = 0;   // (0, 50]
    std::size_t upto_100 = 0;  // (50, 100]
    std::size_t over_100 = 0;

    std::size_t total() const { return zero + upto_50 + upto_100 + over_100; }
    void add(std::size_t d);
};

struct EvaluationReport {
    std::size_t instances = 0;
    std::size_t missing = 0;
    std::size_t invalid_syntax = 0;
    std::size_t unlocated = 0;  // valid syntax, no log insertion recognized
    std::size_t located = 0;
    std::size_t no_valid_level = 0;
    std::size_t unknown_predictions = 0;
    std::vector<CountRow> combinations;
    CountRow wrong_syntax;
    std::vector<LevelRow> per_level;
    std::array<std::size_t, 6> level_histogram{};
    DistanceBuckets position_exclusive;
    DistanceBuckets position_inclusive;
    double mean_bleu4 = 0.0;
    double mean_message_chars = 0.0;

    const CountRow& row(std::string_view label) const;
};

/// Row labels, in table order.
inline constexpr std::array<std::string_view, 10> kCombinationRows = {
    "L", "P", "M", "L only", "P only", "M only", "L+P", "L+M", "P+M", "All"};

/// Percentages are over all instances, missing ones included. The result does
/// not depend on outcome order.
EvaluationReport aggregate(const std::vector<EvaluationOutcome>& outcomes, std::size_t unknown_predictions = 0);

nlohmann::ordered_json to_json(const EvaluationReport& report);
nlohmann::ordered_json to_json(const EvaluationOutcome& outcome);

std::string render_markdown(const EvaluationReport& report);

/// One column per named report.
std::string render_comparison(const std::vector<std::pair<std::string, EvaluationReport>>& reports);

}  // namespace loglab
