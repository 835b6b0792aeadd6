#include <gtest/gtest.h>

#include <algorithm>

#include "java_gen.hpp"
#include "oracles.hpp"
#include "loglab/baseline_predictor.hpp"
#include "loglab/syntax_check.hpp"

using namespace loglab;

namespace {

DatasetInstance ft_instance(const std::string& method_text, std::size_t k, const std::string& id) {
    MethodRecord m;
    m.tokens = tokenize(method_text);
    m.id = id;
    m.log_statements = find_log_statements(m);
    return build_ft(m, k);
}

}  // namespace

TEST(Heuristic, CatchBlockGetsErrorLog) {
    const std::string out = predict_heuristic(
        std::string_view("void foo ( ) { try { bar ( ) ; } catch ( Exception e ) { throw e ; } }"));
    EXPECT_EQ(out, "void foo ( ) { try { bar ( ) ; } catch ( Exception e ) { logger . error ( \"foo failed\" , e ) ; "
                   "throw e ; } }");
}

TEST(Heuristic, FirstCatchOnlyAndMultiCatch) {
    const std::string out = predict_heuristic(std::string_view(
        "void foo ( ) { try { a ( ) ; } catch ( IOException | RuntimeException ex ) { } catch ( Error err ) { } }"));
    EXPECT_NE(out.find("catch ( IOException | RuntimeException ex ) { logger . error ( \"foo failed\" , ex ) ; }"),
              std::string::npos);
    EXPECT_EQ(out.find("err ) ; }"), std::string::npos);
}

TEST(Heuristic, NoCatchLogsMethodName) {
    EXPECT_EQ(predict_heuristic(std::string_view("int size ( ) { return n ; }")),
              "int size ( ) { logger . info ( \"size\" ) ; return n ; }");
    EXPECT_EQ(predict_heuristic(std::string_view(
                  "@Retry ( times = 3 ) @Named ( \"x\" ) public <T> T load ( Class < T > c ) throws IOException { }")),
              "@Retry ( times = 3 ) @Named ( \"x\" ) public < T > T load ( Class < T > c ) throws IOException { "
              "logger . info ( \"load\" ) ; }");
}

TEST(Heuristic, AnnotationArgumentsAreNotTheName) {
    EXPECT_EQ(method_name(tokenize("@Timed ( value = \"t\" ) void run ( ) { }")), "run");
    EXPECT_EQ(method_name(tokenize("@a.b.Marker ( 1 ) Foo ( int x ) { }")), "Foo");
}

TEST(Heuristic, GeneratedInputsStayValid) {
    testkit::JavaGenerator gen(31);
    for (int i = 0; i < 300; ++i) {
        testkit::GenOptions o;
        o.logs = 0;
        o.with_catch = i % 2 == 0;
        const TokenSeq input = tokenize(gen.method(o).text);
        const bool has_catch = std::any_of(input.begin(), input.end(), [](const Token& t) { return t.text == "catch"; });
        const std::string out = predict_heuristic(std::span<const Token>(input));
        EXPECT_TRUE(syntax_check(out)) << out;
        const LocateResult r = locate_injected_statement(input, out);
        ASSERT_TRUE(r) << out;
        EXPECT_EQ(r.injected->statement.receiver, "logger");
        EXPECT_EQ(r.injected->statement.level, has_catch ? LogLevel::Error : LogLevel::Info);
    }
}

TEST(Jaccard, AgreesWithSetOracle) {
    Rng rng(4, "bags");
    const std::vector<std::string> vocab = {"if", "(", ")", "{", "}", "x", "y", "log", ";", "return"};
    for (int i = 0; i < 20; ++i) {
        std::vector<std::string> a, b;
        for (std::size_t k = rng.below(8); k > 0; --k) a.push_back(vocab[rng.below(vocab.size())]);
        for (std::size_t k = rng.below(8); k > 0; --k) b.push_back(vocab[rng.below(vocab.size())]);
        TokenSeq ta, tb;
        for (const auto& w : a) ta.push_back(Token{w});
        for (const auto& w : b) tb.push_back(Token{w});
        EXPECT_DOUBLE_EQ(jaccard(token_bag(ta), token_bag(tb)), testkit::set_jaccard(a, b));
    }
    EXPECT_DOUBLE_EQ(jaccard({}, {}), 1.0);
    EXPECT_DOUBLE_EQ(jaccard({"a"}, {}), 0.0);
}

TEST(Retrieval, SelfRetrievalReproducesStatementAndAnchor) {
    const auto a = ft_instance("void a ( ) { x ( ) ; log . info ( \"alpha\" ) ; y ( ) ; }", 0, "a");
    const auto b = ft_instance("int b ( int q ) { if ( q > 0 ) { log . warn ( \"beta {}\" , q ) ; } return q ; }", 0, "b");
    const RetrievalIndex index = RetrievalIndex::build({a, b}, {{a.instance_id, Split::Train}, {b.instance_id, Split::Train}});
    ASSERT_EQ(index.entries().size(), 2u);
    EXPECT_EQ(predict_retrieval(index, std::string_view(a.input_text)), a.target_text);
    EXPECT_EQ(predict_retrieval(index, std::string_view(b.input_text)), b.target_text);
}

TEST(Retrieval, OnlyTrainSplitIsIndexed) {
    const auto a = ft_instance("void a ( ) { x ( ) ; log . info ( \"alpha\" ) ; }", 0, "a");
    const auto b = ft_instance("void b ( ) { y ( ) ; log . info ( \"beta\" ) ; }", 0, "b");
    const RetrievalIndex index = RetrievalIndex::build({a, b}, {{a.instance_id, Split::Test}, {b.instance_id, Split::Train}});
    ASSERT_EQ(index.entries().size(), 1u);
    EXPECT_EQ(index.entries()[0].instance_id, b.instance_id);
}

TEST(Retrieval, TiesGoToLowerOrdinal) {
    RetrievalEntry first, second;
    first.instance_id = "first";
    first.bag = {"a", "b"};
    first.block = tokenize("log.info(\"first\");");
    second = first;
    second.instance_id = "second";
    second.block = tokenize("log.info(\"second\");");
    const RetrievalIndex index({first, second});
    EXPECT_EQ(index.nearest({"a", "c"}), 0u);
    EXPECT_EQ(predict_retrieval(index, std::string_view("void f ( ) { a ( ) ; }")).find("second"), std::string::npos);
}

TEST(Retrieval, ClampsToNearestStatementBoundary) {
    RetrievalEntry e;
    e.bag = {"x"};
    e.block = tokenize("log.debug(\"d\");");
    e.anchor = 7;
    e.input_size = 10;
    const RetrievalIndex index({e});
    // 13 tokens; 0.7 * 13 rounds to 9, which lies between the boundaries 5 and 12.
    EXPECT_EQ(predict_retrieval(index, std::string_view("void f ( ) { a ( b , c ) ; }")),
              "void f ( ) { a ( b , c ) ; log . debug ( \"d\" ) ; }");
}

TEST(Retrieval, EmptyIndexIsConfigError) {
    const RetrievalIndex index;
    EXPECT_THROW(predict_retrieval(index, std::string_view("void f ( ) { }")), ConfigError);
}

TEST(Retrieval, GeneratedInputsStayValid) {
    testkit::JavaGenerator gen(77);
    std::vector<DatasetInstance> ft;
    SplitAssignment splits;
    for (int i = 0; i < 120; ++i) {
        testkit::GenOptions o;
        o.logs = 1 + static_cast<std::size_t>(i % 2);
        MethodRecord m;
        m.tokens = tokenize(gen.method(o).text);
        m.id = "m" + std::to_string(i);
        m.log_statements = find_log_statements(m);
        for (std::size_t k = 0; k < m.log_statements.size(); ++k) {
            ft.push_back(build_ft(m, k));
            splits[ft.back().instance_id] = i < 80 ? Split::Train : Split::Test;
        }
    }
    const RetrievalIndex index = RetrievalIndex::build(ft, splits);
    for (const auto& inst : ft) {
        if (splits[inst.instance_id] != Split::Test) continue;
        const TokenSeq input = tokenize(inst.input_text);
        const std::string out = predict_retrieval(index, std::span<const Token>(input));
        EXPECT_TRUE(syntax_check(out)) << out;
        EXPECT_TRUE(locate_injected_statement(input, out)) << out;
        EXPECT_EQ(out, predict_retrieval(index, std::span<const Token>(input)));
    }
}
