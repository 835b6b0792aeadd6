#include <gtest/gtest.h>

#include <algorithm>

#include "java_gen.hpp"
#include "loglab/log_analysis.hpp"
#include "loglab/method_extractor.hpp"

using namespace loglab;

namespace {

std::vector<std::string> names(const ExtractionResult& r) {
    std::vector<std::string> out;
    for (const auto& m : r.methods) {
        // identifier before the first "(" outside annotations
        std::size_t i = 0;
        while (i < m.tokens.size()) {
            if (m.tokens[i].kind == TokenKind::Annotation && i + 1 < m.tokens.size() && m.tokens[i + 1].text == "(") {
                while (m.tokens[i].text != ")") ++i;
            } else if (m.tokens[i].text == "(") {
                out.push_back(m.tokens[i - 1].text);
                break;
            }
            ++i;
        }
    }
    return out;
}

const char* kShop = R"(
package shop;

public class Cart implements Iterable<Item> {
    private final List<Item> items = new ArrayList<>();
    private final Comparator<Item> byPrice = new Comparator<Item>() {
        @Override
        public int compare(Item a, Item b) { return Long.compare(a.price, b.price); }
    };
    private final Runnable hook = () -> { System.out.println("x"); };
    static { REGISTRY.add("cart"); }
    { items.clear(); }

    public Cart() {
        super();
    }

    @Override
    public Iterator<Item> iterator() {
        return items.iterator();
    }

    public abstract void hidden();

    public long total() {
        Runnable r = new Runnable() {
            public void run() { log.debug("inner"); }
        };
        class Local { int f() { return 1; } }
        return items.stream().mapToLong(i -> { return i.price; }).sum();
    }

    static class Item {
        long price;
        long price() { return price; }
    }

    interface Visitor {
        void visit(Item i);
        default void done() { }
    }

    enum Mode {
        FAST { void go() { } },
        SLOW;
        void go() { throw new UnsupportedOperationException(); }
    }

    record Pair(int a, int b) {
        Pair {
            if (a > b) throw new IllegalArgumentException();
        }
        int sum() { return a + b; }
    }
}
)";

}  // namespace

TEST(ExtractMethods, FindsMembersAtClassBodyDepth) {
    const auto r = extract_methods(kShop, "shop", "Cart.java");
    EXPECT_EQ(names(r), (std::vector<std::string>{"Cart", "iterator", "total", "price", "done", "go", "sum"}));
}

TEST(ExtractMethods, RecordCarriesSourceAndNormalizedTokens) {
    const auto r = extract_methods(kShop, "shop", "Cart.java");
    const auto& it = r.methods[1];
    EXPECT_EQ(it.repo, "shop");
    EXPECT_EQ(it.path, "Cart.java");
    EXPECT_EQ(render(it.tokens), "@Override public Iterator < Item > iterator ( ) { return items . iterator ( ) ; }");
    EXPECT_TRUE(it.raw_text.starts_with("@Override"));
    EXPECT_TRUE(it.raw_text.ends_with("}"));
    EXPECT_EQ(it.id, content_hash(render(it.tokens)));
    EXPECT_EQ(it.tokens.front().index, 0u);
    EXPECT_EQ(it.tokens.front().line, 18);
}

TEST(ExtractMethods, AnonymousAndLocalClassesStayInside) {
    const auto r = extract_methods(kShop, "shop", "Cart.java");
    const auto& total = r.methods[2];
    const std::string text = render(total.tokens);
    EXPECT_NE(text.find("class Local"), std::string::npos);
    EXPECT_NE(text.find("public void run ( )"), std::string::npos);
    EXPECT_EQ(find_log_statements(total).size(), 1u);
}

TEST(ExtractMethods, UnbalancedClassIsSkippedWithWarning) {
    const std::string src = "class A { void ok() { } }\nclass B { void broken() { if (x) { }\n";
    const auto r = extract_methods(src, "r", "AB.java");
    ASSERT_EQ(r.methods.size(), 1u);
    EXPECT_FALSE(r.warnings.empty());
    EXPECT_EQ(r.warnings[0].path, "AB.java");
}

TEST(ExtractMethods, LexErrorPropagates) {
    EXPECT_THROW(extract_methods("class A { String s = \"x; }", "r", "A.java"), LexError);
}

TEST(ExtractMethods, ContentHashIsStableAndDistinct) {
    EXPECT_EQ(content_hash("a b c"), content_hash("a b c"));
    EXPECT_NE(content_hash("a b c"), content_hash("a b d"));
    EXPECT_EQ(content_hash("").size(), 16u);
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(ExtractMethods, CountTokensIgnoresPlaceholders) {
    TokenSeq toks = tokenize("void f ( ) { <LOG_STMT> }");
    EXPECT_EQ(count_tokens(toks), 6u);
}

TEST(ExtractMethods, GeneratedMethodsRoundTrip) {
    testkit::JavaGenerator gen(11);
    for (int round = 0; round < 40; ++round) {
        std::vector<testkit::GeneratedMethod> made;
        std::vector<std::string> texts;
        for (std::size_t k = 0; k < 5; ++k) {
            testkit::GenOptions o;
            o.logs = k;
            made.push_back(gen.method(o));
            texts.push_back(made.back().text);
        }
        const auto r = extract_methods(testkit::JavaGenerator::class_source("G", texts), "gen", "G.java");
        ASSERT_EQ(r.methods.size(), made.size()) << testkit::JavaGenerator::class_source("G", texts);
        EXPECT_TRUE(r.warnings.empty());
        for (std::size_t k = 0; k < made.size(); ++k) {
            EXPECT_EQ(render(r.methods[k].tokens), render(tokenize(made[k].text)));
            const auto logs = find_log_statements(r.methods[k]);
            ASSERT_EQ(logs.size(), made[k].levels.size()) << made[k].text;
            for (std::size_t j = 0; j < logs.size(); ++j) EXPECT_EQ(logs[j].level, made[k].levels[j]);
        }
    }
}
