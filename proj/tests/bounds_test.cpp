#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "syndef/bounds.hpp"
#include "test_util.hpp"

using namespace syndef;
using namespace syndef::bounds;
using testutil::W;

TEST(Patterns, AsListed) {
  const auto& p = block_patterns();
  EXPECT_EQ(p[0], (std::vector<Word>{W("11234"), W("12134"), W("12314"), W("12341")}));
  EXPECT_EQ(p[1], (std::vector<Word>{W("22341"), W("23241"), W("23421"), W("23412")}));
  EXPECT_EQ(p[2], (std::vector<Word>{W("33412"), W("34312"), W("34132"), W("34123")}));
  EXPECT_EQ(p[3], (std::vector<Word>{W("44123"), W("41423"), W("41243"), W("41234")}));
  EXPECT_EQ(free_blocks().size(), 1008u);
}

TEST(CliqueCover, LengthFive) {
  auto q = build_clique_cover(5);
  ASSERT_EQ(q.cliques.size(), 1012u);
  int big = 0;
  for (const auto& c : q.cliques) big += c.members.size() == 4;
  EXPECT_EQ(big, 4);
  EXPECT_EQ(q.cliques[0].members, block_patterns()[0]);
  EXPECT_THROW(build_clique_cover(4), ParameterError);
}

// Each 4-clique collapses under the cycle of its block's second position, at every offset.
TEST(CliqueCover, CliquesCollapseUnderTheirDefect) {
  for (int n : {5, 6, 7}) {
    for (const auto& c : build_clique_cover(n).cliques) {
      if (c.members.size() != 4) continue;
      auto z = apply_defects(c.members[0], DefectSet{c.delta});
      ASSERT_EQ(static_cast<int>(z.size()), n - 1);
      for (const auto& y : c.members) ASSERT_EQ(apply_defects(y, DefectSet{c.delta}), z);
      // the shared defect is the fifth cycle after the block's first cycle
      auto cs = cycles(c.members[0]);
      ASSERT_TRUE(std::find(cs.begin(), cs.end(), c.delta - 4) != cs.end());
    }
  }
}

TEST(CoverSize, CountEqualsClosedForm) {
  auto s5 = cover_size(5);
  EXPECT_EQ(s5.count, 1012u);
  EXPECT_NEAR(static_cast<double>(s5.closed_form), 1012.0, 1e-9);
  for (int n = 5; n <= 25; ++n) {
    auto s = cover_size(n);
    EXPECT_TRUE(s.agree) << n;
    EXPECT_NEAR(static_cast<double>(s.closed_form) / static_cast<double>(s.count), 1.0, 1e-12) << n;
  }
  EXPECT_EQ(cover_size(10).count, 1024192u);
  EXPECT_THROW(cover_size(4), ParameterError);
}

// |Q_n| / 4^n = (1 + 3 (1008/1024)^floor(n/5)) / 4: decreasing in floor(n/5), limit 1/4.
TEST(CoverSize, RatioDecaysTowardQuarter) {
  double prev = 1.0;
  for (int n = 5; n <= 30; n += 5) {
    double r = static_cast<double>(cover_size(n).count) / std::pow(4.0, n);
    EXPECT_NEAR(4.0 * r - 1.0, 3.0 * std::pow(1008.0 / 1024.0, n / 5), 1e-12) << n;
    EXPECT_LT(r, prev);
    EXPECT_GT(r, 0.25);
    prev = r;
  }
}

TEST(VerifyCover, ValidAtSmallLengths) {
  for (int n : {5, 6, 7}) {
    auto v = verify_cover(n);
    EXPECT_TRUE(v.ok) << n << " " << v.witness;
  }
}

TEST(VerifyCover, NegativeControls) {
  auto q = build_clique_cover(5);
  auto dropped = q;
  dropped.cliques.erase(dropped.cliques.begin());
  auto v = verify_cover(dropped);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.witness, "uncovered: 11234");

  auto broken = q;
  broken.cliques[0].members[3] = W("44444");
  auto b = verify_cover(broken);
  EXPECT_FALSE(b.ok);
  EXPECT_NE(b.witness.find("not adjacent"), std::string::npos);
}

TEST(SizeBounds, Sandwich) {
  auto b5 = kdcc_size_bounds(5);
  EXPECT_GE(b5.best_sum1_size, 256);
  EXPECT_EQ(b5.cover_size, 1012u);
  for (int n : {5, 6, 7}) {
    auto b = kdcc_size_bounds(n);
    EXPECT_LE(static_cast<unsigned long long>(b.best_sum1_size), b.cover_size);
    EXPECT_NEAR(b.redundancy_bits_lower_bound + b.vanishing_term_bits, 2.0, 1e-12);
    EXPECT_NEAR(b.redundancy_quaternary * 2.0, b.redundancy_bits_lower_bound, 1e-12);
  }
  EXPECT_LT(kdcc_size_bounds(10).vanishing_term_bits, kdcc_size_bounds(5).vanishing_term_bits);
  EXPECT_THROW(kdcc_size_bounds(11), ParameterError);
}
