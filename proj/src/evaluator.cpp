#include "loglab/evaluator.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "loglab/bleu.hpp"
#include "loglab/parallel.hpp"
#include "loglab/syntax_check.hpp"

namespace loglab {

namespace {

std::size_t code_points(std::string_view s) {
    std::size_t n = 0;
    for (unsigned char c : s) {
        if ((c & 0xC0) != 0x80) ++n;
    }
    return n;
}

double percent(std::size_t count, std::size_t total) {
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(total);
}

std::size_t abs_diff(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

EvaluationOutcome blank(std::string_view id, const Reference& ref) {
    EvaluationOutcome o;
    o.instance_id = std::string(id);
    o.ref_level = ref.statement.level;
    o.message_chars = message_chars(ref.statement);
    return o;
}

// Which of L, P, M hold, as a 3-bit mask.
unsigned components(const EvaluationOutcome& o) {
    return (o.level_correct ? 4u : 0u) | (o.position_correct ? 2u : 0u) | (o.message_correct ? 1u : 0u);
}

bool row_matches(std::string_view label, unsigned c) {
    if (label == "L") return c & 4u;
    if (label == "P") return c & 2u;
    if (label == "M") return c & 1u;
    if (label == "L only") return c == 4u;
    if (label == "P only") return c == 2u;
    if (label == "M only") return c == 1u;
    if (label == "L+P") return c == 6u;
    if (label == "L+M") return c == 5u;
    if (label == "P+M") return c == 3u;
    return c == 7u;
}

// Level / Position / Message marks for a row; "-" means either.
std::array<const char*, 3> marks(std::string_view label) {
    if (label == "L") return {"✓", "-", "-"};
    if (label == "P") return {"-", "✓", "-"};
    if (label == "M") return {"-", "-", "✓"};
    if (label == "L only") return {"✓", "✗", "✗"};
    if (label == "P only") return {"✗", "✓", "✗"};
    if (label == "M only") return {"✗", "✗", "✓"};
    if (label == "L+P") return {"✓", "✓", "✗"};
    if (label == "L+M") return {"✓", "✗", "✓"};
    if (label == "P+M") return {"✗", "✓", "✓"};
    return {"✓", "✓", "✓"};
}

std::string fixed(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

nlohmann::ordered_json buckets_json(const DistanceBuckets& b) {
    return {{"0", b.zero}, {"<=50", b.upto_50}, {"<=100", b.upto_100}, {">100", b.over_100}};
}

}  // namespace

std::size_t message_chars(const LogStatement& statement) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < statement.message_tokens.size(); ++i) {
        if (i > 0) ++n;
        n += code_points(statement.message_tokens[i]);
    }
    return n;
}

Reference make_reference(const DatasetInstance& instance, const ReceiverRule& rule) {
    if (instance.task != Task::FT) {
        throw std::invalid_argument("instance " + instance.instance_id + " is not an FT instance");
    }
    Reference ref;
    ref.input = tokenize(instance.input_text);
    const LocateResult found = locate_injected_statement(ref.input, instance.target_text, rule);
    if (!found) {
        throw std::invalid_argument("instance " + instance.instance_id +
                                    ": target is not the input plus one log statement");
    }
    ref.statement = found.injected->statement;
    ref.block = found.injected->block;
    ref.anchor = found.injected->anchor;
    return ref;
}

EvaluationOutcome score(const Reference& ref, std::string_view instance_id, std::string_view prediction_text,
                        const ReceiverRule& rule) {
    EvaluationOutcome o = blank(instance_id, ref);
    // Ties between equivalent anchors resolve towards the reference.
    const LocateResult found = locate_injected_statement(ref.input, prediction_text, rule, ref.anchor);
    o.status = found.status;
    o.valid_syntax = syntax_check(prediction_text);
    if (!o.valid_syntax) return o;
    if (found.placement) o.placement_distance = abs_diff(*found.placement, ref.anchor);
    if (!found) return o;

    const InjectedLog& inj = *found.injected;
    o.located = true;
    o.pred_level = inj.statement.level;
    o.level_distance = level_distance(inj.statement.level, ref.statement.level);
    o.level_correct = *o.level_distance == 0;
    o.position_distance = abs_diff(inj.anchor, ref.anchor);
    o.position_correct = *o.position_distance == 0;
    o.message_correct = inj.statement.message_tokens == ref.statement.message_tokens;
    o.bleu4 = bleu4(inj.statement.message_tokens, ref.statement.message_tokens);
    return o;
}

EvaluationOutcome score(const DatasetInstance& instance, std::string_view prediction_text,
                        const ReceiverRule& rule) {
    return score(make_reference(instance, rule), instance.instance_id, prediction_text, rule);
}

EvaluationOutcome score_missing(const DatasetInstance& instance, const ReceiverRule& rule) {
    EvaluationOutcome o = blank(instance.instance_id, make_reference(instance, rule));
    o.missing = true;
    return o;
}

ScoredRun score_all(const std::vector<DatasetInstance>& instances, const std::vector<Prediction>& predictions,
                    const ReceiverRule& rule, unsigned jobs) {
    ScoredRun run;
    std::map<std::string_view, std::size_t> wanted;
    for (std::size_t i = 0; i < instances.size(); ++i) wanted.emplace(instances[i].instance_id, i);

    std::vector<const Prediction*> chosen(instances.size(), nullptr);
    for (const auto& p : predictions) {
        const auto it = wanted.find(p.instance_id);
        if (it == wanted.end()) {
            ++run.unknown_predictions;
        } else if (chosen[it->second]) {
            ++run.duplicate_predictions;
        } else {
            chosen[it->second] = &p;
        }
    }

    run.outcomes.resize(instances.size());
    parallel_for(instances.size(), jobs, [&](std::size_t i) {
        run.outcomes[i] = chosen[i] ? score(instances[i], chosen[i]->text, rule) : score_missing(instances[i], rule);
    });
    return run;
}

void DistanceBuckets::add(std::size_t d) {
    if (d == 0) ++zero;
    else if (d <= 50) ++upto_50;
    else if (d <= 100) ++upto_100;
    else ++over_100;
}

const CountRow& EvaluationReport::row(std::string_view label) const {
    for (const auto& r : combinations) {
        if (r.label == label) return r;
    }
    throw std::out_of_range("no report row " + std::string(label));
}

EvaluationReport aggregate(const std::vector<EvaluationOutcome>& outcomes, std::size_t unknown_predictions) {
    EvaluationReport r;
    r.instances = outcomes.size();
    r.unknown_predictions = unknown_predictions;

    std::array<std::size_t, 8> by_mask{};
    std::map<LogLevel, LevelRow> levels;
    std::map<LogLevel, std::vector<std::size_t>> chars_by_level;
    std::vector<double> bleu;
    std::vector<std::size_t> chars;
    bleu.reserve(outcomes.size());

    for (const auto& o : outcomes) {
        bleu.push_back(o.bleu4);
        chars.push_back(o.message_chars);
        LevelRow& lr = levels[o.ref_level];
        lr.level = o.ref_level;
        ++lr.instances;
        chars_by_level[o.ref_level].push_back(o.message_chars);

        if (o.missing) {
            ++r.missing;
            continue;
        }
        if (!o.valid_syntax) {
            ++r.invalid_syntax;
            continue;
        }
        if (o.placement_distance) r.position_inclusive.add(*o.placement_distance);
        if (!o.located) {
            ++r.unlocated;
            ++r.no_valid_level;
            continue;
        }
        ++r.located;
        ++by_mask[components(o)];
        r.level_histogram[static_cast<std::size_t>(*o.level_distance)]++;
        r.position_exclusive.add(*o.position_distance);
        if (o.level_correct) ++lr.level_correct;
        if (o.all_correct()) ++lr.all_correct;
    }

    for (std::string_view label : kCombinationRows) {
        CountRow row;
        row.label = std::string(label);
        for (unsigned c = 0; c < 8; ++c) {
            if (row_matches(label, c)) row.count += by_mask[c];
        }
        row.percent = percent(row.count, r.instances);
        r.combinations.push_back(row);
    }
    r.wrong_syntax = {"Wrong syntax", r.invalid_syntax, percent(r.invalid_syntax, r.instances)};

    for (LogLevel level : kAllLevels) {
        const auto it = levels.find(level);
        if (it == levels.end()) continue;
        LevelRow lr = it->second;
        lr.level_percent = percent(lr.level_correct, lr.instances);
        lr.all_percent = percent(lr.all_correct, lr.instances);
        std::vector<std::size_t>& c = chars_by_level[level];
        std::sort(c.begin(), c.end());
        double sum = 0.0;
        for (std::size_t v : c) sum += static_cast<double>(v);
        lr.mean_message_chars = sum / static_cast<double>(c.size());
        r.per_level.push_back(lr);
    }

    // Sorted before summing so the means are independent of outcome order.
    std::sort(bleu.begin(), bleu.end());
    std::sort(chars.begin(), chars.end());
    double bleu_sum = 0.0, chars_sum = 0.0;
    for (double b : bleu) bleu_sum += b;
    for (std::size_t c : chars) chars_sum += static_cast<double>(c);
    if (!outcomes.empty()) {
        r.mean_bleu4 = bleu_sum / static_cast<double>(outcomes.size());
        r.mean_message_chars = chars_sum / static_cast<double>(outcomes.size());
    }
    return r;
}

nlohmann::ordered_json to_json(const EvaluationReport& r) {
    nlohmann::ordered_json j;
    j["instances"] = r.instances;
    j["missing"] = r.missing;
    j["invalid_syntax"] = r.invalid_syntax;
    j["unlocated"] = r.unlocated;
    j["located"] = r.located;
    j["no_valid_level"] = r.no_valid_level;
    j["unknown_predictions"] = r.unknown_predictions;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : r.combinations) {
        rows.push_back({{"row", row.label}, {"count", row.count}, {"percent", row.percent}});
    }
    j["combinations"] = rows;
    j["wrong_syntax"] = {{"count", r.wrong_syntax.count}, {"percent", r.wrong_syntax.percent}};
    auto levels = nlohmann::ordered_json::array();
    for (const auto& lr : r.per_level) {
        levels.push_back({{"level", to_string(lr.level)},
                          {"instances", lr.instances},
                          {"level_correct", lr.level_correct},
                          {"all_correct", lr.all_correct},
                          {"level_percent", lr.level_percent},
                          {"all_percent", lr.all_percent},
                          {"mean_message_chars", lr.mean_message_chars}});
    }
    j["per_level"] = levels;
    j["level_distance_histogram"] = r.level_histogram;
    j["position_distance"] = {{"exclusive", buckets_json(r.position_exclusive)},
                              {"inclusive", buckets_json(r.position_inclusive)}};
    j["mean_bleu4"] = r.mean_bleu4;
    j["mean_message_chars"] = r.mean_message_chars;
    return j;
}

nlohmann::ordered_json to_json(const EvaluationOutcome& o) {
    nlohmann::ordered_json j;
    j["instance_id"] = o.instance_id;
    j["missing"] = o.missing;
    j["valid_syntax"] = o.valid_syntax;
    j["located"] = o.located;
    j["status"] = to_string(o.status);
    j["level_correct"] = o.level_correct;
    j["position_correct"] = o.position_correct;
    j["message_correct"] = o.message_correct;
    j["level_distance"] = o.level_distance ? nlohmann::ordered_json(*o.level_distance) : nullptr;
    j["position_distance"] = o.position_distance ? nlohmann::ordered_json(*o.position_distance) : nullptr;
    j["bleu4"] = o.bleu4;
    j["pred_level"] = o.pred_level ? nlohmann::ordered_json(to_string(*o.pred_level)) : nullptr;
    j["ref_level"] = to_string(o.ref_level);
    j["message_chars"] = o.message_chars;
    return j;
}

std::string render_markdown(const EvaluationReport& r) {
    std::string out;
    out += "## Correct predictions\n\n";
    out += "| Level | Position | Message | % | Count |\n|:-:|:-:|:-:|--:|--:|\n";
    for (const auto& row : r.combinations) {
        const auto m = marks(row.label);
        out += std::string("| ") + m[0] + " | " + m[1] + " | " + m[2] + " | " + fixed(row.percent) + " | " +
               std::to_string(row.count) + " |\n";
    }
    out += "| Wrong syntax | | | " + fixed(r.wrong_syntax.percent) + " | " + std::to_string(r.wrong_syntax.count) +
           "/" + std::to_string(r.instances) + " |\n\n";
    out += "Instances: " + std::to_string(r.instances) + ", missing predictions: " + std::to_string(r.missing) +
           ", no valid log level: " + std::to_string(r.no_valid_level) + ", mean BLEU-4: " + fixed(r.mean_bleu4, 4) +
           "\n\n";

    out += "## By log level\n\n| Level | Instances | All (%) | Corr. Pred. (%) | Mean message chars |\n";
    out += "|---|--:|--:|--:|--:|\n";
    for (const auto& lr : r.per_level) {
        out += "| " + std::string(to_string(lr.level)) + " | " + std::to_string(lr.instances) + " | " +
               fixed(lr.level_percent) + " | " + fixed(lr.all_percent) + " | " + fixed(lr.mean_message_chars, 1) +
               " |\n";
    }

    out += "\n## Level distance\n\n| Distance | Count |\n|--:|--:|\n";
    for (std::size_t d = 0; d < r.level_histogram.size(); ++d) {
        out += "| " + std::to_string(d) + " | " + std::to_string(r.level_histogram[d]) + " |\n";
    }

    out += "\n## Position distance (tokens)\n\n| Distance | Located | Incl. unknown level |\n|---|--:|--:|\n";
    const DistanceBuckets& a = r.position_exclusive;
    const DistanceBuckets& b = r.position_inclusive;
    out += "| 0 | " + std::to_string(a.zero) + " | " + std::to_string(b.zero) + " |\n";
    out += "| 1-50 | " + std::to_string(a.upto_50) + " | " + std::to_string(b.upto_50) + " |\n";
    out += "| 51-100 | " + std::to_string(a.upto_100) + " | " + std::to_string(b.upto_100) + " |\n";
    out += "| >100 | " + std::to_string(a.over_100) + " | " + std::to_string(b.over_100) + " |\n";
    return out;
}

std::string render_comparison(const std::vector<std::pair<std::string, EvaluationReport>>& reports) {
    std::string out = "| Level | Position | Message |";
    std::string rule = "|:-:|:-:|:-:|";
    for (const auto& [name, report] : reports) {
        out += " " + name + " |";
        rule += "--:|";
    }
    out += "\n" + rule + "\n";
    for (std::string_view label : kCombinationRows) {
        const auto m = marks(label);
        out += std::string("| ") + m[0] + " | " + m[1] + " | " + m[2] + " |";
        for (const auto& entry : reports) out += " " + fixed(entry.second.row(label).percent) + " |";
        out += "\n";
    }
    out += "| Wrong syntax | | |";
    for (const auto& entry : reports) {
        out += " " + fixed(entry.second.wrong_syntax.percent) + " (" + std::to_string(entry.second.wrong_syntax.count) +
               "/" + std::to_string(entry.second.instances) + ") |";
    }
    out += "\n| Mean BLEU-4 | | |";
    for (const auto& entry : reports) out += " " + fixed(entry.second.mean_bleu4, 4) + " |";
    out += "\n";
    return out;
}

}  // namespace loglab
