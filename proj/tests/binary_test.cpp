#include <gtest/gtest.h>

#include <map>

#include "syndef/array_code.hpp"
#include "syndef/binary.hpp"
#include "syndef/sketch.hpp"
#include "test_util.hpp"

using namespace syndef;
using namespace syndef::binary;
using testutil::all_bits;
using testutil::B;

namespace {

std::set<Bits> single_insertions(const Bits& r) {
  std::set<Bits> out;
  for (std::size_t p = 0; p <= r.size(); ++p)
    for (std::uint8_t b : {0, 1}) out.insert(insert_bit(r, p, b));
  return out;
}

Bits erase1(const Bits& x, int pos) { return erase_positions(x, {pos}); }

}  // namespace

TEST(VtSyndrome, Examples) {
  EXPECT_EQ(vt_syndrome(B("000000")), 0);
  EXPECT_EQ(vt_syndrome(B("110100")), 7);
  EXPECT_EQ(vt_syndrome(B("1011")), 8);
}

TEST(VtDecode, Examples) {
  EXPECT_EQ(vt_decode(B("000"), 0, 4), B("0000"));
  EXPECT_EQ(vt_decode(B("010"), 4, 4), B("1010"));
  // 1110 has syndrome 6 = 1 mod 5, so this received word is decodable.
  EXPECT_EQ(vt_decode(B("111"), 1, 4), B("1110"));
}

TEST(VtDecode, MatchesInsertionOracle) {
  for (int n = 1; n <= 10; ++n)
    for (const auto& r : all_bits(n - 1))
      for (int a = 0; a <= n; ++a) {
        std::set<Bits> hits;
        for (const auto& y : single_insertions(r))
          if (vt_syndrome(y) % (n + 1) == a) hits.insert(y);
        ASSERT_EQ(hits.size(), 1u) << "VT single-deletion ball is always hit exactly once";
        ASSERT_EQ(vt_decode(r, a, n), *hits.begin());
      }
}

TEST(VtDecode, LargerModulusRoundTrip) {
  for (const auto& x : all_bits(9))
    for (int i = 1; i <= 9; ++i) ASSERT_EQ(vt_decode(erase1(x, i), vt_syndrome(x) % 17, 9, 17), x);
}

TEST(SvtDecode, AllZeroAndExhaustive) {
  SvtParams zero{0, 0, 5};
  EXPECT_EQ(svt_decode(Bits(7, 0), 3, zero), Bits(8, 0));
  for (int n = 3; n <= 12; ++n)
    for (const auto& x : all_bits(n))
      for (int P : {3, 5}) {
        auto params = svt_params(x, P);
        for (int i = 1; i <= n; ++i)
          for (int s = i - P + 1; s <= i; ++s) ASSERT_EQ(svt_decode(erase1(x, i), s, params), x);
      }
}

// Residues whose window holds zero or several members must be rejected, never guessed.
TEST(SvtDecode, NonUniqueWindowFails) {
  Bits r = B("0110");
  int rejected = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 2; ++b) {
      SvtParams p{a, b, 4};
      std::set<Bits> hits;
      for (int pos = 2; pos <= 5; ++pos)
        for (std::uint8_t bit : {0, 1}) {
          auto y = insert_bit(r, pos - 1, bit);
          if (svt_member(y, p)) hits.insert(y);
        }
      if (hits.size() == 1) {
        EXPECT_EQ(svt_decode(r, 2, p), *hits.begin());
      } else {
        EXPECT_THROW(svt_decode(r, 2, p), DecodeFailure);
        ++rejected;
      }
    }
  EXPECT_GT(rejected, 0);
}

TEST(ArraySyndromes, Examples) {
  auto p = array_syndromes(B("1010"), 2);
  EXPECT_EQ(p.row_sums, (std::vector<int>{2, 0}));
  EXPECT_EQ(p.weighted, 3);
  EXPECT_EQ(p.modulus, 36);
  auto z = array_syndromes(Bits(7, 0), 3);
  EXPECT_EQ(z.row_sums, (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(z.weighted, 0);
}

TEST(ArrayErasure, IdentityWithoutErasures) {
  Bits x = B("1101001");
  EXPECT_EQ(array_erasure_decode(x, {}, array_syndromes(x, 3)), x);
}

// Oracle: every word agreeing outside the bursts with equal syndromes; exactly one must exist.
TEST(ArrayErasure, ExhaustiveTwoBurstsAgainstBruteForce) {
  for (int n = 6; n <= 10; ++n)
    for (int P : {2, 3}) {
      auto words = all_bits(n);
      std::map<std::pair<std::vector<int>, long long>, std::vector<const Bits*>> classes;
      for (const auto& y : words) {
        auto s = array_syndromes(y, P);
        classes[{s.row_sums, s.weighted}].push_back(&y);
      }
      for (const auto& x : words) {
        auto params = array_syndromes(x, P);
        const auto& cls = classes[{params.row_sums, params.weighted}];
        for (int s1 = 1; s1 + P - 1 <= n; ++s1)
          for (int s2 = s1; s2 + P - 1 <= n; ++s2) {
            std::vector<Interval> bursts{{s1, P}, {s2, P}};
            int agree = 0;
            for (const Bits* y : cls) {
              bool ok = true;
              for (int i = 1; i <= n && ok; ++i)
                if (!bursts[0].contains(i) && !bursts[1].contains(i)) ok = (*y)[i - 1] == x[i - 1];
              agree += ok;
            }
            ASSERT_EQ(agree, 1);
            Bits garbled = x;
            for (auto& b : bursts)
              for (int i = b.start; i <= b.end(); ++i) garbled[i - 1] ^= 1;
            ASSERT_EQ(array_erasure_decode(garbled, bursts, params), x);
          }
      }
    }
}

TEST(ArrayBounded, ExhaustiveDeletionsInIntervals) {
  for (int n = 6; n <= 10; ++n)
    for (int P : {2, 3})
      for (const auto& x : all_bits(n)) {
        auto params = array_syndromes(x, P);
        for (int s1 = 1; s1 + P - 1 <= n; ++s1)
          for (int s2 = s1; s2 + P - 1 <= n; ++s2) {
            std::vector<Interval> iv{{s1, P}, {s2, P}};
            for (int i = s1; i <= iv[0].end(); ++i)
              for (int j = s2; j <= iv[1].end(); ++j) {
                if (i == j) continue;
                ASSERT_EQ(array_bounded_decode(erase_positions(x, {i, j}), iv, params), x);
              }
          }
        for (int s = 1; s + P - 1 <= n; ++s)
          for (int i = s; i < s + P; ++i) {
            std::vector<Interval> iv{{s, P}};
            ASSERT_EQ(array_bounded_decode(erase1(x, i), iv, params), x);
          }
      }
}

TEST(ArrayBounded, LengthMismatchIsRejected) {
  Bits x = B("10110");
  auto params = array_syndromes(x, 2);
  std::vector<Interval> beyond{{9, 2}};
  EXPECT_THROW(array_bounded_decode(erase1(x, 2), beyond, params), ParameterError);
  std::vector<Interval> two{{1, 2}, {3, 2}};
  EXPECT_THROW(array_bounded_decode(erase1(x, 2), two, params), ParameterError);
}

TEST(Sketch, ZeroWordAndSmallWeights) {
  EXPECT_EQ(helberg_weights(6), (std::vector<std::uint64_t>{1, 2, 4, 7, 12, 20, 33}));
  Bits z(10, 0);
  auto sk = sketch_xi(z);
  EXPECT_EQ(sk.residue, 0u);
  EXPECT_EQ(xi_decode(Bits(8, 0), sk), z);
  EXPECT_EQ(sketch_from_bits(sketch_bits(sk), 10), sk);
}

TEST(Sketch, ExhaustiveTwoDeletionsLength10) {
  const int n = 10;
  for (const auto& x : all_bits(n)) {
    auto sk = sketch_xi(x);
    for (int i = 1; i <= n; ++i) {
      ASSERT_EQ(xi_decode(erase1(x, i), sk), x);
      for (int j = i + 1; j <= n; ++j) ASSERT_EQ(xi_decode(erase_positions(x, {i, j}), sk), x);
    }
  }
}

// Independent check of the code property: no two words of equal residue share a subsequence
// of length n-2.
TEST(Sketch, NoCollisionsAmongDeletionBalls) {
  for (int n = 3; n <= 12; ++n) {
    std::map<std::pair<std::uint64_t, Bits>, Bits> seen;
    for (const auto& x : all_bits(n)) {
      auto r = sketch_xi(x).residue;
      std::set<Bits> ball;
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) ball.insert(erase_positions(x, {i, j}));
      for (const auto& b : ball) {
        auto [it, fresh] = seen.emplace(std::make_pair(r, b), x);
        ASSERT_TRUE(fresh || it->second == x) << "n=" << n;
      }
    }
  }
}

TEST(Sketch, TruncatedSketchIsAmbiguous) {
  Bits x = B("0110100110");
  auto sk = sketch_xi(x);
  XiSketch weak{sk.residue % 4, 4, sk.length};
  EXPECT_THROW(xi_decode(erase_positions(x, {2, 7}), weak), DecodeFailure);
}

TEST(Sketch, WidthTracksGoldenRatioRate) {
  for (int n : {16, 32, 64}) {
    int budget = static_cast<int>(std::ceil((n + 3) * sketch_rate())) + 1;
    EXPECT_LE(sketch_width(n), budget) << n;
  }
  EXPECT_THROW(helberg_weights(kMaxSketchLength + 1), ParameterError);
}
