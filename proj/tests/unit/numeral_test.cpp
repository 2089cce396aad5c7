#include <gtest/gtest.h>

#include "refnum/numeral.hpp"
#include "support/oracles.hpp"

using namespace refnum;

TEST(Numeral, Decimal) {
  EXPECT_EQ(numeral_value("2"), 2);
  EXPECT_EQ(numeral_value("0"), 0);
  EXPECT_EQ(numeral_value("1992"), 1992);
  EXPECT_FALSE(numeral_value(""));
  EXPECT_FALSE(numeral_value("2a"));
}

TEST(Numeral, Kanji) {
  EXPECT_EQ(numeral_value("一"), 1);
  EXPECT_EQ(numeral_value("十"), 10);
  EXPECT_EQ(numeral_value("十五"), 15);
  EXPECT_EQ(numeral_value("二十"), 20);
  EXPECT_EQ(numeral_value("三百"), 300);
  EXPECT_EQ(numeral_value("九千九百九十九"), 9999);
  EXPECT_FALSE(numeral_value("十百"));
  EXPECT_FALSE(numeral_value("二三"));
  EXPECT_FALSE(numeral_value("NI"));
}

TEST(Numeral, MorphemeNumeral) {
  Morpheme two{"noun", "numeral", "_", "_", "二", "二"};
  EXPECT_EQ(morpheme_numeral(two), 2);
  Morpheme decimal{"noun", "_", "_", "_", "3", "3"};
  EXPECT_EQ(morpheme_numeral(decimal), 3);
  Morpheme word{"noun", "numeral", "_", "_", "NIKO", "NIKO"};
  EXPECT_FALSE(morpheme_numeral(word));
  Morpheme kanji_non_numeral{"noun", "common-noun", "_", "_", "一", "一"};
  EXPECT_FALSE(morpheme_numeral(kanji_non_numeral));
}

TEST(NumeralProperty, KanjiSpellingInverts) {
  for (long long n = 1; n <= 9999; ++n) ASSERT_EQ(numeral_value(refnum::testing::kanji_numeral(n)), n) << n;
}
