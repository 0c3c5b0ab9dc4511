#include <gtest/gtest.h>

#include <map>

#include "syndef/core.hpp"
#include "test_util.hpp"

using namespace syndef;
using testutil::all_words;
using testutil::W;

TEST(Diff, Examples) {
  EXPECT_EQ(diff(W("1241321")), W("1121233"));
  EXPECT_EQ(diff(W("1")), W("1"));
  EXPECT_EQ(diff(W("1111")), W("1444"));
}

TEST(InverseDiff, Examples) {
  EXPECT_EQ(inverse_diff(W("1121233")), W("1241321"));
  EXPECT_EQ(inverse_diff(W("1")), W("1"));
  EXPECT_EQ(inverse_diff(W("1444")), W("1111"));
}

TEST(InverseDiff, BijectionExhaustive) {
  for (int n = 1; n <= 6; ++n)
    for (const auto& x : all_words(n)) ASSERT_EQ(inverse_diff(diff(x)), x);
}

TEST(Cycles, Examples) {
  EXPECT_EQ(cycles(W("1241321")), (Schedule{1, 2, 4, 5, 7, 10, 13}));
  EXPECT_EQ(cycles(W("31411")), (Schedule{3, 5, 8, 9, 13}));
  EXPECT_EQ(cycles(W("1234")), (Schedule{1, 2, 3, 4}));
}

TEST(Cycles, StrictlyIncreasingWithBoundedGaps) {
  for (const auto& x : all_words(6)) {
    auto c = cycles(x);
    ASSERT_GE(c[0], 1);
    ASSERT_LE(c[0], 4);
    for (std::size_t i = 1; i < c.size(); ++i) {
      ASSERT_GT(c[i], c[i - 1]);
      ASSERT_LE(c[i] - c[i - 1], 4);
    }
    ASSERT_LE(c.back(), 4 * 6);
    for (std::size_t i = 0; i < c.size(); ++i) ASSERT_EQ(wrap4(c[i]), x[i]);
  }
}

TEST(ApplyDefects, Examples) {
  EXPECT_EQ(apply_defects(W("1241321"), DefectSet{12, 13}), W("124132"));
  EXPECT_EQ(apply_defects(W("1241321"), DefectSet{}), W("1241321"));
  EXPECT_EQ(apply_defects(W("14131"), DefectSet{1}), W("4131"));
}

TEST(ApplyDefects, TupleExamples) {
  StrandTuple c({Strand::parse("31411"), Strand::parse("12213"), Strand::parse("14131")});
  ReceivedTuple hit{W("31411"), W("2213"), W("4131")};
  EXPECT_EQ(apply_defects_tuple(c, DefectSet{1}), hit);
  ReceivedTuple same{W("31411"), W("12213"), W("14131")};
  EXPECT_EQ(apply_defects_tuple(c, DefectSet{10}), same);
  EXPECT_EQ(apply_defects_tuple(c, DefectSet{}), same);
}

TEST(ApplyDefects, OutputLengthMatchesHits) {
  for (const auto& x : all_words(5)) {
    auto c = cycles(x);
    for (int d1 = 1; d1 <= 20; ++d1)
      for (int d2 = d1 + 1; d2 <= 20; ++d2) {
        DefectSet delta{d1, d2};
        std::size_t hits = 0;
        for (int v : c) hits += delta.contains(v);
        ASSERT_EQ(apply_defects(x, delta).size(), x.size() - hits);
      }
  }
}

TEST(DefectSet, RejectsRepeatsAndNonPositive) {
  EXPECT_THROW(DefectSet({3, 3}), ParameterError);
  EXPECT_THROW(DefectSet({0}), ParameterError);
  EXPECT_EQ(DefectSet({7, 2}).cycles(), (std::vector<int>{2, 7}));
}

TEST(Strand, Validation) {
  EXPECT_THROW(Strand::parse(""), ParameterError);
  EXPECT_THROW(Strand::parse("1250"), ParameterError);
  EXPECT_EQ(Strand::parse("4321").str(), "4321");
}

TEST(ConfusableBall, Examples) {
  EXPECT_EQ(confusable_ball(W("12341"), DefectSet{5}),
            (std::set<Word>{W("11234"), W("12134"), W("12314"), W("12341")}));
  EXPECT_EQ(confusable_ball(W("21231"), DefectSet{5}), (std::set<Word>{W("21231")}));
}

TEST(ConfusableBall, MatchesBruteForce) {
  for (int n = 1; n <= 5; ++n) {
    auto words = all_words(n);
    for (const auto& x : words) {
      for (int d1 = 1; d1 <= 4 * n; ++d1) {
        std::set<Word> brute;
        auto z = apply_defects(x, DefectSet{d1});
        for (const auto& y : words)
          if (apply_defects(y, DefectSet{d1}) == z) brute.insert(y);
        ASSERT_EQ(confusable_ball(x, DefectSet{d1}), brute);
        ASSERT_LE(brute.size(), 4u);
      }
    }
  }
}

TEST(ConfusableBall, TwoDefectsMatchesBruteForce) {
  const int n = 4;
  auto words = all_words(n);
  for (const auto& x : words)
    for (int d1 = 1; d1 <= 4 * n; ++d1)
      for (int d2 = d1 + 1; d2 <= 4 * n; ++d2) {
        DefectSet delta{d1, d2};
        std::set<Word> brute;
        auto z = apply_defects(x, delta);
        for (const auto& y : words)
          if (apply_defects(y, delta) == z) brute.insert(y);
        ASSERT_EQ(confusable_ball(x, delta), brute);
      }
}

// Inserted positions stay within 4k-1 of the true defective indices.
TEST(ConfusableBall, InsertionWindowBound) {
  const int n = 6;
  for (const auto& x : all_words(n)) {
    auto c = cycles(x);
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = i1 + 1; i2 < n; ++i2) {
        std::vector<int> d{c[i1], c[i2]};
        auto z = apply_defects(x, DefectSet(d));
        for (const auto& ins : constrained_insertions(z, d)) {
          if (apply_defects(ins.word, DefectSet(d)) != z) continue;
          ASSERT_LE(std::abs(static_cast<int>(ins.positions[0]) - i1), 3);
          ASSERT_LE(std::abs(static_cast<int>(ins.positions[1]) - i2), 7);
        }
      }
  }
}

TEST(ConfusableBall, TemplateTwoDefectWalkthrough) {
  Word x = W("123412341234123412");
  DefectSet delta{5, 17};
  auto z = apply_defects(x, delta);
  EXPECT_EQ(z, W("1234234123412342"));
  Word y = W("112342341123412342");
  auto ball = confusable_ball(x, delta);
  EXPECT_TRUE(ball.count(y));
  EXPECT_TRUE(ball.count(x));
}

TEST(DefectBall, Examples) {
  StrandTuple c({Strand::parse("31411"), Strand::parse("12213"), Strand::parse("14131")});
  auto b0 = defect_ball(c, 0);
  ASSERT_EQ(b0.size(), 1u);
  EXPECT_EQ(*b0.begin(), apply_defects_tuple(c, DefectSet{}));
  auto b1 = defect_ball(c, 1);
  EXPECT_TRUE(b1.count(ReceivedTuple{W("31411"), W("2213"), W("4131")}));
}

TEST(Signature, Examples) {
  EXPECT_EQ(signature(W("1234")), Bits({1, 1, 1}));
  EXPECT_EQ(signature(W("31411")), Bits({0, 1, 0, 1}));
  EXPECT_EQ(signature(W("122124123")), Bits({1, 1, 0, 1, 1, 0, 1, 1}));
  EXPECT_THROW(signature(W("3")), ParameterError);
}

// Deleting x_i deletes signature bit i or i-1 (1-based).
TEST(Signature, SingleDeletionLosesNeighbouringBit) {
  for (const auto& x : all_words(6)) {
    auto s = signature(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      Word xd = x;
      xd.erase(xd.begin() + static_cast<long>(i));
      auto sd = comparison_bits(xd);
      bool ok = false;
      for (long j : {static_cast<long>(i) - 1, static_cast<long>(i)}) {
        if (j < 0 || j >= static_cast<long>(s.size())) continue;
        Bits t = s;
        t.erase(t.begin() + j);
        ok |= (t == sd);
      }
      ASSERT_TRUE(ok);
    }
  }
}

TEST(RunSequence, Examples) {
  EXPECT_EQ(run_sequence(parse_bits("10010111")), (std::vector<int>{1, 2, 2, 3, 4, 5, 5, 5}));
  EXPECT_EQ(run_sequence(parse_bits("0000")), (std::vector<int>{1, 1, 1, 1}));
  EXPECT_EQ(run_sequence(parse_bits("0101")), (std::vector<int>{1, 2, 3, 4}));
}

TEST(SymbolPositions, Examples) {
  auto p2 = symbol_positions(W("122124123"), 2);
  EXPECT_EQ(p2.count, 4);
  EXPECT_EQ(p2.positions, (std::vector<int>{2, 3, 5, 8}));
  auto p3 = symbol_positions(W("122124123"), 3);
  EXPECT_EQ(p3.count, 1);
  EXPECT_EQ(p3.positions, (std::vector<int>{9}));
  EXPECT_EQ(symbol_positions(W("1111"), 2).count, 0);
}

TEST(Shift, Examples) {
  Strand x(Word{1, 3, 2, 1, 1, 4, 3, 2, 3, 4});
  auto s1 = shift(x, 1);
  EXPECT_EQ(s1.strand().word(), (Word{2, 4, 3, 2, 2, 1, 4, 3, 4, 1}));
  EXPECT_EQ(s1.schedule(), (Schedule{2, 4, 7, 10, 14, 17, 20, 23, 24, 25}));
  EXPECT_EQ(shift(x, 6).strand().word(), (Word{3, 1, 4, 3, 3, 2, 1, 4, 1, 2}));
  EXPECT_EQ(shift(x, 0).strand(), x);
  EXPECT_THROW(shift(x, 17), RangeError);
  EXPECT_THROW(shift(x, -1), RangeError);
}

// The physical shifted strand, read on its own schedule, is consistent symbol by symbol.
TEST(Shift, ScheduleCarriesSymbols) {
  for (const auto& w : all_words(5)) {
    Strand x(w);
    auto [lo, hi] = shift_range(x);
    for (int a = lo; a <= hi; ++a) {
      auto s = shift(x, a);
      auto sched = s.schedule();
      auto phys = s.strand();
      for (std::size_t i = 0; i < sched.size(); ++i) ASSERT_EQ(wrap4(sched[i]), phys[i]);
    }
  }
}

TEST(Regular, Examples) {
  EXPECT_FALSE(is_regular(Bits(12, 1), 8));
  Bits rep;
  for (int i = 0; i < 6; ++i)
    for (auto b : {0, 0, 1, 1}) rep.push_back(static_cast<std::uint8_t>(b));
  EXPECT_TRUE(is_regular(rep, 8));
  EXPECT_TRUE(is_regular(Bits(5, 1), 6));
  EXPECT_THROW(is_regular(rep, 3), ParameterError);
}

TEST(Regular, MatchesBruteForceWindows) {
  for (int len = 4; len <= 14; ++len)
    for (int w = 4; w <= len; ++w) {
      long long count = 0;
      for (long long m = 0; m < (1LL << len); ++m) {
        Bits b(len);
        for (int i = 0; i < len; ++i) b[i] = (m >> i) & 1;
        bool ok = true;
        for (int s = 0; s + w <= len && ok; ++s) {
          bool z = false, o = false;
          for (int i = s; i + 1 < s + w; ++i) {
            if (b[i] == b[i + 1]) (b[i] ? o : z) = true;
          }
          ok = z && o;
        }
        ASSERT_EQ(is_regular(b, w), ok);
        count += ok;
      }
      ASSERT_NEAR(regular_fraction(len, w), static_cast<double>(count) / (1LL << len), 1e-12);
    }
}

TEST(Regular, DefaultWindowLeavesMostWordsRegular) {
  for (int n : {64, 128, 256, 512}) {
    int w = default_regular_window(n);
    EXPECT_GE(regular_fraction(n - 1, w), 0.99) << n;
  }
}

TEST(Wrap4, ShiftedModulo) {
  EXPECT_EQ(wrap4(0), 4);
  EXPECT_EQ(wrap4(4), 4);
  EXPECT_EQ(wrap4(5), 1);
  EXPECT_EQ(wrap4(-3), 1);
}
