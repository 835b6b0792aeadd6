#include <gtest/gtest.h>

#include <algorithm>

#include "java_gen.hpp"
#include "loglab/evaluator.hpp"

using namespace loglab;

namespace {

const char* kMethod =
    "void run ( int x ) { if ( x > 0 ) { step ( x ) ; } log . info ( \"ran {}\" , x ) ; done ( ) ; }";

DatasetInstance instance() {
    MethodRecord m;
    m.id = "run";
    m.tokens = tokenize(kMethod);
    m.log_statements = find_log_statements(m);
    return build_ft(m, 0);
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
    const auto at = s.find(from);
    EXPECT_NE(at, std::string::npos) << from;
    return s.replace(at, from.size(), to);
}

EvaluationOutcome labeled(bool l, bool p, bool m, LogLevel level = LogLevel::Info) {
    EvaluationOutcome o;
    o.valid_syntax = true;
    o.located = true;
    o.status = LocateStatus::Located;
    o.level_correct = l;
    o.position_correct = p;
    o.message_correct = m;
    o.level_distance = l ? 0 : 2;
    o.position_distance = p ? 0 : 7;
    o.placement_distance = o.position_distance;
    o.ref_level = level;
    o.pred_level = level;
    o.bleu4 = m ? 1.0 : 0.25;
    return o;
}

}  // namespace

TEST(Score, IdentityIsFullyCorrect) {
    const auto inst = instance();
    const auto o = score(inst, inst.target_text);
    EXPECT_TRUE(o.valid_syntax);
    EXPECT_TRUE(o.located);
    EXPECT_TRUE(o.all_correct());
    EXPECT_DOUBLE_EQ(o.bleu4, 1.0);
    EXPECT_EQ(o.level_distance, 0);
    EXPECT_EQ(o.position_distance, 0u);
    EXPECT_EQ(o.ref_level, LogLevel::Info);
    EXPECT_EQ(o.message_chars, std::string("\"ran {}\" , x").size());
}

TEST(Score, DifferentMessageKeepsLevelAndPosition) {
    const auto inst = instance();
    const auto o = score(inst, replace(inst.target_text, "\"ran {}\" , x", "\"finished\""));
    EXPECT_TRUE(o.level_correct);
    EXPECT_TRUE(o.position_correct);
    EXPECT_FALSE(o.message_correct);
    EXPECT_LT(o.bleu4, 1.0);
    EXPECT_EQ(aggregate({o}).row("L+P").count, 1u);
}

TEST(Score, MessageComparisonIsCaseSensitive) {
    const auto inst = instance();
    EXPECT_FALSE(score(inst, replace(inst.target_text, "\"ran {}\"", "\"Ran {}\"")).message_correct);
}

TEST(Score, LevelSwapMeasuresDistance) {
    const auto inst = instance();
    const auto o = score(inst, replace(inst.target_text, ". info (", ". fatal ("));
    EXPECT_FALSE(o.level_correct);
    EXPECT_EQ(o.level_distance, 3);
    EXPECT_TRUE(o.position_correct);
    EXPECT_TRUE(o.message_correct);
    EXPECT_EQ(o.pred_level, LogLevel::Fatal);
}

TEST(Score, MovedStatementIsWrongPosition) {
    const auto inst = instance();
    const std::string stmt = "log . info ( \"ran {}\" , x ) ; ";
    const std::string moved = replace(replace(inst.target_text, stmt, ""), "{ if", "{ " + stmt + "if");
    const auto o = score(inst, moved);
    ASSERT_TRUE(o.located);
    EXPECT_TRUE(o.level_correct);
    EXPECT_TRUE(o.message_correct);
    EXPECT_FALSE(o.position_correct);
    EXPECT_EQ(o.position_distance, 13u);
}

TEST(Score, BrokenBracketsAreInvalid) {
    const auto inst = instance();
    const auto o = score(inst, replace(inst.target_text, "x ) ;", "x ;"));
    EXPECT_FALSE(o.valid_syntax);
    EXPECT_FALSE(o.level_correct);
    EXPECT_FALSE(o.position_correct);
    EXPECT_FALSE(o.message_correct);
    EXPECT_EQ(o.bleu4, 0.0);
    EXPECT_EQ(aggregate({o}).wrong_syntax.count, 1u);
}

TEST(Score, UnchangedAndUnknownLevel) {
    const auto inst = instance();
    const auto same = score(inst, inst.input_text);
    EXPECT_TRUE(same.valid_syntax);
    EXPECT_FALSE(same.located);
    EXPECT_EQ(same.status, LocateStatus::Unchanged);

    const auto call = score(inst, replace(inst.target_text, ". info (", ". notice ("));
    EXPECT_FALSE(call.located);
    EXPECT_EQ(call.status, LocateStatus::Unrecognized);
    EXPECT_EQ(call.placement_distance, 0u);
    EXPECT_FALSE(call.position_distance);
    const auto r = aggregate({call});
    EXPECT_EQ(r.no_valid_level, 1u);
    EXPECT_EQ(r.position_inclusive.zero, 1u);
    EXPECT_EQ(r.position_exclusive.total(), 0u);
}

TEST(Score, ReferenceRequiresFt) {
    auto inst = instance();
    inst.task = Task::P2;
    EXPECT_THROW(make_reference(inst), std::invalid_argument);
}

TEST(Aggregate, HandLabeledRows) {
    std::vector<EvaluationOutcome> v = {
        labeled(true, true, true),   labeled(true, true, false),  labeled(true, true, false),
        labeled(true, true, false),  labeled(true, false, true),  labeled(true, false, false),
        labeled(false, true, false), labeled(false, false, false), labeled(false, false, false),
    };
    EvaluationOutcome bad;
    bad.status = LocateStatus::NonLogEdit;
    v.push_back(bad);

    const auto r = aggregate(v);
    EXPECT_EQ(r.instances, 10u);
    EXPECT_DOUBLE_EQ(r.row("L").percent, 60.0);
    EXPECT_DOUBLE_EQ(r.row("P").percent, 50.0);
    EXPECT_DOUBLE_EQ(r.row("M").percent, 20.0);
    EXPECT_DOUBLE_EQ(r.row("All").percent, 10.0);
    EXPECT_EQ(r.row("L only").count, 1u);
    EXPECT_EQ(r.row("P only").count, 1u);
    EXPECT_EQ(r.row("M only").count, 0u);
    EXPECT_EQ(r.row("L+P").count, 3u);
    EXPECT_EQ(r.row("L+M").count, 1u);
    EXPECT_EQ(r.row("P+M").count, 0u);
    EXPECT_EQ(r.wrong_syntax.count, 1u);
    EXPECT_DOUBLE_EQ(r.wrong_syntax.percent, 10.0);
    EXPECT_EQ(r.level_histogram[0], 6u);
    EXPECT_EQ(r.level_histogram[2], 3u);
    EXPECT_EQ(r.position_exclusive.zero, 5u);
    EXPECT_EQ(r.position_exclusive.upto_50, 4u);
}

TEST(Aggregate, AllPerfect) {
    std::vector<EvaluationOutcome> v(25, labeled(true, true, true));
    const auto r = aggregate(v);
    EXPECT_DOUBLE_EQ(r.row("All").percent, 100.0);
    EXPECT_DOUBLE_EQ(r.wrong_syntax.percent, 0.0);
    EXPECT_DOUBLE_EQ(r.mean_bleu4, 1.0);
}

TEST(Aggregate, LevelRows) {
    std::vector<EvaluationOutcome> v = {labeled(true, true, true, LogLevel::Error),
                                        labeled(false, true, true, LogLevel::Error),
                                        labeled(true, false, false, LogLevel::Debug)};
    v[0].message_chars = 10;
    v[1].message_chars = 20;
    v[2].message_chars = 4;
    const auto r = aggregate(v);
    ASSERT_EQ(r.per_level.size(), 2u);
    EXPECT_EQ(r.per_level[0].level, LogLevel::Debug);
    EXPECT_EQ(r.per_level[1].level, LogLevel::Error);
    EXPECT_DOUBLE_EQ(r.per_level[1].level_percent, 50.0);
    EXPECT_DOUBLE_EQ(r.per_level[1].all_percent, 50.0);
    EXPECT_DOUBLE_EQ(r.per_level[1].mean_message_chars, 15.0);
    EXPECT_DOUBLE_EQ(r.mean_message_chars, 34.0 / 3.0);
}

TEST(Aggregate, DistanceBucketEdges) {
    DistanceBuckets b;
    for (std::size_t d : {0u, 1u, 50u, 51u, 100u, 101u, 5000u}) b.add(d);
    EXPECT_EQ(b.zero, 1u);
    EXPECT_EQ(b.upto_50, 2u);
    EXPECT_EQ(b.upto_100, 2u);
    EXPECT_EQ(b.over_100, 2u);
}

TEST(ScoreAll, EmptyPredictionsAreMissing) {
    const auto inst = instance();
    const auto run = score_all({inst}, {});
    ASSERT_EQ(run.outcomes.size(), 1u);
    EXPECT_TRUE(run.outcomes[0].missing);
    const auto r = aggregate(run.outcomes);
    EXPECT_EQ(r.missing, 1u);
    EXPECT_EQ(r.wrong_syntax.count, 0u);
    EXPECT_DOUBLE_EQ(r.row("All").percent, 0.0);
}

TEST(ScoreAll, UnknownAndDuplicateIds) {
    const auto inst = instance();
    const auto run = score_all({inst}, {{inst.instance_id, inst.target_text},
                                        {inst.instance_id, inst.input_text},
                                        {"nope", "x"}});
    EXPECT_EQ(run.unknown_predictions, 1u);
    EXPECT_EQ(run.duplicate_predictions, 1u);
    EXPECT_TRUE(run.outcomes[0].all_correct());
    EXPECT_EQ(aggregate(run.outcomes, run.unknown_predictions).unknown_predictions, 1u);
}

TEST(ScoreAll, ParallelMatchesSerial) {
    testkit::JavaGenerator gen(5);
    std::vector<DatasetInstance> instances;
    std::vector<Prediction> preds;
    for (int i = 0; i < 60; ++i) {
        MethodRecord m;
        m.id = "g" + std::to_string(i);
        m.tokens = tokenize(gen.method({}).text);
        m.log_statements = find_log_statements(m);
        instances.push_back(build_ft(m, 0));
        preds.push_back({instances.back().instance_id, i % 3 ? instances.back().target_text : instances.back().input_text});
    }
    const auto serial = score_all(instances, preds, {}, 1);
    const auto parallel = score_all(instances, preds, {}, 4);
    EXPECT_EQ(serial.outcomes, parallel.outcomes);
}

TEST(Aggregate, OrderIndependentAndConsistent) {
    Rng rng(12, "outcomes");
    std::vector<EvaluationOutcome> v;
    for (int i = 0; i < 500; ++i) {
        EvaluationOutcome o = labeled(rng.below(2), rng.below(2), rng.below(2), kAllLevels[rng.below(6)]);
        o.level_distance = o.level_correct ? 0 : 1 + static_cast<int>(rng.below(5));
        o.position_distance = o.position_correct ? 0 : 1 + rng.below(300);
        o.placement_distance = o.position_distance;
        o.bleu4 = rng.unit();
        o.message_chars = rng.below(80);
        if (rng.below(10) == 0) o = EvaluationOutcome{};
        v.push_back(o);
    }
    const auto a = aggregate(v);
    std::reverse(v.begin(), v.end());
    Rng(3, "perm").shuffle(v);
    const auto b = aggregate(v);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());

    std::size_t level_ok = 0, pos_ok = 0;
    for (const auto& o : v) {
        level_ok += o.level_correct;
        pos_ok += o.position_correct;
    }
    EXPECT_EQ(a.level_histogram[0], level_ok);
    EXPECT_EQ(a.row("L").count, level_ok);
    EXPECT_EQ(a.position_exclusive.zero, pos_ok);
    EXPECT_EQ(a.position_exclusive.total(), a.located);
    std::size_t exclusive = 0;
    for (std::string_view label : {"L only", "P only", "M only", "L+P", "L+M", "P+M", "All"}) {
        exclusive += a.row(label).count;
    }
    EXPECT_LE(exclusive, a.located);
}

TEST(Render, MarkdownAndComparison) {
    std::vector<EvaluationOutcome> v = {labeled(true, true, true), labeled(true, false, false)};
    const auto r = aggregate(v);
    const std::string md = render_markdown(r);
    EXPECT_NE(md.find("| ✓ | ✓ | ✓ | 50.00"), std::string::npos) << md;
    EXPECT_NE(md.find("Wrong syntax"), std::string::npos);
    const std::string cmp = render_comparison({{"heuristic", r}, {"retrieval", aggregate({})}});
    EXPECT_NE(cmp.find("heuristic"), std::string::npos);
    EXPECT_NE(cmp.find("retrieval"), std::string::npos);
    const auto j = to_json(r);
    EXPECT_EQ(j["instances"], 2);
}
