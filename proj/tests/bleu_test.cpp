#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "loglab/bleu.hpp"
#include "loglab/random.hpp"

using namespace loglab;
using testkit::words;

TEST(Bleu4, IdenticalIsOne) {
    EXPECT_DOUBLE_EQ(bleu4(words("a b c d e"), words("a b c d e")), 1.0);
    EXPECT_DOUBLE_EQ(bleu4(words("x"), words("x")), 1.0);
    EXPECT_DOUBLE_EQ(bleu4(words("x y"), words("x y")), 1.0);
}

TEST(Bleu4, DisjointIsEpsilonSmall) {
    EXPECT_LT(bleu4(words("a b c d"), words("e f g h")), 1e-8);
    EXPECT_GT(bleu4(words("a b c d"), words("e f g h")), 0.0);
}

TEST(Bleu4, EmptyCandidateIsZero) {
    EXPECT_EQ(bleu4({}, words("a b")), 0.0);
    EXPECT_EQ(bleu4({}, {}), 0.0);
}

// Clipped counts by hand: unigrams 5/6 ("the" clipped to one), bigrams
// {the cat, cat sat, sat on} 3/5, trigrams {the cat sat, cat sat on} 2/4,
// 4-grams {the cat sat on} 1/3; equal lengths so BP = 1.
TEST(Bleu4, WorkedExampleMat) {
    const auto b = bleu4_breakdown(words("the cat sat on the mat"), words("the cat sat on a mat"));
    EXPECT_DOUBLE_EQ(b.precision[0], 5.0 / 6.0);
    EXPECT_DOUBLE_EQ(b.precision[1], 3.0 / 5.0);
    EXPECT_DOUBLE_EQ(b.precision[2], 2.0 / 4.0);
    EXPECT_DOUBLE_EQ(b.precision[3], 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(b.brevity_penalty, 1.0);
    EXPECT_NEAR(b.score, 0.537284965911771, 1e-12);
    EXPECT_NEAR(b.score, std::pow(1.0 / 12.0, 0.25), 1e-12);
}

// Changing only the last word gives precisions 5/6, 4/5, 3/4, 2/3.
TEST(Bleu4, WorkedExampleLastWordDiffers) {
    const auto b = bleu4_breakdown(words("the cat sat on the mat"), words("the cat sat on the rug"));
    EXPECT_DOUBLE_EQ(b.precision[0], 5.0 / 6.0);
    EXPECT_DOUBLE_EQ(b.precision[1], 4.0 / 5.0);
    EXPECT_DOUBLE_EQ(b.precision[2], 3.0 / 4.0);
    EXPECT_DOUBLE_EQ(b.precision[3], 2.0 / 3.0);
    EXPECT_NEAR(b.score, std::pow(5.0 / 6.0 * 4.0 / 5.0 * 3.0 / 4.0 * 2.0 / 3.0, 0.25), 1e-12);
}

TEST(Bleu4, BrevityPenalty) {
    const auto b = bleu4_breakdown(words("a b c"), words("a b c d e f"));
    EXPECT_NEAR(b.brevity_penalty, std::exp(1.0 - 6.0 / 3.0), 1e-15);
    EXPECT_DOUBLE_EQ(bleu4_breakdown(words("a b c d e f g"), words("a b c")).brevity_penalty, 1.0);
}

TEST(Bleu4, MatchesBruteForceOracle) {
    Rng rng(42, "bleu-test");
    const std::vector<std::string> vocab = {"a", "b", "c", "d", "e"};
    for (int i = 0; i < 500; ++i) {
        std::vector<std::string> c(rng.below(9)), r(1 + rng.below(9));
        for (auto& w : c) w = vocab[rng.below(vocab.size())];
        for (auto& w : r) w = vocab[rng.below(vocab.size())];
        EXPECT_NEAR(bleu4(c, r), testkit::brute_bleu4(c, r), 1e-12);
        const double v = bleu4(c, r);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
    }
}
