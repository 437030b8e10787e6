#include <gtest/gtest.h>

#include "nilkit/errors.hpp"
#include "nilkit/text.hpp"
#include "support.hpp"

using namespace nilkit;

namespace {

std::size_t error_column(std::string_view text) {
    try {
        parse_word(text);
    } catch (const SyntaxError& e) {
        return e.column();
    }
    return 0;
}

}  // namespace

TEST(Parse, Letter) {
    const auto c = parse_commutator("x3");
    EXPECT_TRUE(c.is_letter());
    EXPECT_EQ(c.letter_index(), 3);
}

TEST(Parse, NestedBrackets) {
    const auto c = parse_commutator("[[x2,x1],x2]");
    EXPECT_EQ(c.weight(), 3);
    EXPECT_EQ(c.left().to_string(), "[x2,x1]");
    EXPECT_EQ(c.right().to_string(), "x2");
}

TEST(Parse, WordWithInverses) {
    const auto w = parse_word("x2^-1 x1 [x2,x1]^-1");
    ASSERT_EQ(w.size(), 3U);
    EXPECT_EQ(w[0].sign, -1);
    EXPECT_EQ(w[1].sign, 1);
    EXPECT_EQ(w[2].sign, -1);
    EXPECT_EQ(w.rank(), 2);
    EXPECT_EQ(w.step(), 2);
}

TEST(Parse, WhitespaceAroundBrackets) {
    EXPECT_EQ(parse_commutator(" [ x1 ,\n x2 ] ").to_string(), "[x1,x2]");
}

TEST(Parse, UnbalancedBracketColumnSeven) {
    try {
        parse_word("[x1,x2");
        FAIL() << "expected a syntax error";
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.line(), 1U);
        EXPECT_EQ(e.column(), 7U);
    }
}

TEST(Parse, ErrorPositions) {
    EXPECT_EQ(error_column("x1 y2"), 4U);
    EXPECT_EQ(error_column("[x1 x2]"), 5U);
    EXPECT_GT(error_column("x"), 0U);
    EXPECT_GT(error_column("x0"), 0U);
    EXPECT_GT(error_column("x1^2"), 0U);
    EXPECT_THROW(parse_word(""), InvalidInput);
}

TEST(Parse, SecondLineReportsLine) {
    try {
        parse_word("x1\n  ]");
        FAIL();
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.line(), 2U);
        EXPECT_EQ(e.column(), 3U);
    }
}

TEST(Parse, ExplicitRankAndStepTruncate) {
    const auto w = parse_word("x1 [x2,x1] [[x2,x1],x1]", 2, 2);
    EXPECT_EQ(w.size(), 2U);
    EXPECT_THROW(parse_word("x3", 2, 2), MalformedCommutator);
}

TEST(Parse, RoundTripsRandomWords) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Occurrence> occ;
        const int n = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < n; ++i) {
            occ.push_back({testing_support::random_commutator(rng, 3, 1 + static_cast<int>(rng() % 4)), rng() % 2 ? 1 : -1});
        }
        const Word w(3, 4, occ);
        const auto back = parse_word(w.to_string(), 3, 4);
        EXPECT_EQ(back, w) << w.to_string();
    }
}

TEST(Word, InverseReversesAndFlips) {
    const auto w = parse_word("x1 x2^-1 [x2,x1]");
    EXPECT_EQ(w.inverse().to_string(), "[x2,x1]^-1 x2 x1^-1");
    EXPECT_EQ(w.inverse().inverse(), w);
}

TEST(Word, LetterWord) {
    EXPECT_EQ(letter_word(2, 2, {2, -1}).to_string(), "x2 x1^-1");
    EXPECT_THROW(letter_word(2, 2, {3}), MalformedCommutator);
}

TEST(IntList, Parses) {
    EXPECT_EQ(parse_int_list(" 1, -2 ,3 "), (std::vector<std::int64_t>{1, -2, 3}));
    EXPECT_THROW(parse_int_list("1,,2"), InvalidInput);
    EXPECT_THROW(parse_int_list("1,a"), InvalidInput);
}
