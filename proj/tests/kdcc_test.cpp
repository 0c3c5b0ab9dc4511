#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "syndef/kdcc.hpp"
#include "test_util.hpp"

using namespace syndef;
using namespace syndef::kdcc;
using testutil::all_words;
using testutil::W;

namespace {

Spec sum1(int n, int a) {
  Spec s;
  s.family = Family::sum1;
  s.n = n;
  s.a = a;
  return s;
}

// Definition check: no two codewords share a defect output for any single delta in [4n].
bool single_defect_disjoint(const std::vector<Word>& code, int n) {
  std::map<std::pair<int, Word>, const Word*> seen;
  for (const auto& x : code)
    for (int d = 1; d <= 4 * n; ++d) {
      auto [it, fresh] = seen.emplace(std::make_pair(d, apply_defects(x, DefectSet{d})), &x);
      if (!fresh && *it->second != x) return false;
    }
  return true;
}

}  // namespace

TEST(Membership, Examples) {
  EXPECT_TRUE(membership(sum1(5, 2), W("12341")));
  for (int a : {0, 1, 3}) EXPECT_FALSE(membership(sum1(5, a), W("12341")));
  EXPECT_TRUE(membership(sum1(1, 0), W("3")));
  for (int n = 3; n <= 8; ++n) {
    Word up(n, 2);
    Spec s;
    s.family = Family::svt1;
    s.n = n;
    s.a = (static_cast<long long>(n - 1) * n / 2) % 5;
    s.b = (n - 1) % 2;
    EXPECT_TRUE(membership(s, up));
    s.a = (s.a + 1) % 5;
    EXPECT_FALSE(membership(s, up));
  }
}

TEST(Membership, Sum1ClassesPartition) {
  for (int n = 1; n <= 6; ++n) {
    long long total = 0;
    for (int a = 0; a < 4; ++a) {
      long long c = static_cast<long long>(codebook(sum1(n, a)).size());
      if (n == 1) {
        EXPECT_EQ(c, a == 0 ? 4 : 0);
      }
      total += c;
    }
    EXPECT_EQ(total, 1LL << (2 * n));
  }
}

TEST(Validate, RejectsBadResidues) {
  EXPECT_THROW(validate(sum1(4, 4)), ParameterError);
  Spec s;
  s.family = Family::svt1;
  s.n = 2;
  EXPECT_THROW(validate(s), ParameterError);
  s.family = Family::array2;
  s.n = 5;
  EXPECT_THROW(validate(s), ParameterError);
}

TEST(DecodeSum1, CycleConsistentInsertionIsUnique) {
  Instance in{W("2231"), DefectSet{5}, 5};
  EXPECT_EQ(apply_defects(W("21231"), DefectSet{5}), W("2231"));
  EXPECT_EQ(decode_sum1(in, even_position_sum(W("21231")) % 4), W("21231"));
  EXPECT_THROW(decode_sum1(in, (even_position_sum(W("21231")) + 1) % 4), DecodeFailure);
  Instance full{W("12341"), DefectSet{7}, 5};
  EXPECT_EQ(decode_sum1(full, 2), W("12341"));
}

TEST(SignatureRecovery, TemplateWalkthrough) {
  Word x = W("123412341234123412");
  std::vector<int> d{5, 17};
  auto z = apply_defects(x, DefectSet{5, 17});
  EXPECT_EQ(recover_from_signature(z, d, signature(x)), x);
  EXPECT_EQ(recover_from_signature(x, std::vector<int>{}, signature(x)), x);
}

// Oracle: the strands of the confusable ball carrying x's signature.  With one defect x is always
// the only one; with two defects recovery succeeds exactly when it is.
TEST(SignatureRecovery, ExhaustiveRecoveryUpToTwoDefects) {
  long long collisions = 0;
  for (int n = 2; n <= 6; ++n)
    for (const auto& x : all_words(n)) {
      auto c = cycles(x);
      auto sig = signature(x);
      auto same_signature = [&](const DefectSet& d) {
        int k = 0;
        for (const auto& y : confusable_ball(x, d)) k += signature(y) == sig;
        return k;
      };
      for (int i = 0; i < n; ++i) {
        std::vector<int> d{c[i]};
        ASSERT_EQ(same_signature(DefectSet{c[i]}), 1);
        ASSERT_EQ(recover_from_signature(apply_defects(x, DefectSet{c[i]}), d, sig), x);
        for (int j = i + 1; j < n; ++j) {
          std::vector<int> d2{c[i], c[j]};
          auto z = apply_defects(x, DefectSet(d2));
          if (same_signature(DefectSet(d2)) == 1) {
            ASSERT_EQ(recover_from_signature(z, d2, sig), x);
          } else {
            ++collisions;
            ASSERT_THROW(recover_from_signature(z, d2, sig), DecodeFailure);
          }
        }
      }
    }
  EXPECT_GT(collisions, 0);
}

TEST(SignatureRecovery, SignatureDoesNotDetermineStrandUnderTwoDefects) {
  DefectSet d{2, 6};
  EXPECT_EQ(apply_defects(W("2211"), d), W("11"));
  EXPECT_EQ(apply_defects(W("1212"), d), W("11"));
  EXPECT_EQ(signature(W("2211")), signature(W("1212")));
  std::vector<int> dv{2, 6};
  EXPECT_THROW(recover_from_signature(W("11"), dv, signature(W("2211"))), DecodeFailure);
}

// The deleted signature bit of the true strand always lies in the derived window.
TEST(SignatureWindows, ContainTrueDeletion) {
  for (int n = 3; n <= 6; ++n)
    for (const auto& x : all_words(n)) {
      auto c = cycles(x);
      auto sig = signature(x);
      for (int i = 0; i < n; ++i) {
        std::vector<int> d{c[i]};
        auto z = apply_defects(x, DefectSet{c[i]});
        auto w = signature_windows(z, d, DefectSet{c[i]}, n);
        ASSERT_EQ(w.size(), 1u);
        ASSERT_LE(w[0].length, kSvtWindow);
        auto sz = comparison_bits(z);
        bool hit = false;
        for (int p = w[0].start; p <= w[0].end(); ++p) hit |= binary::erase_positions(sig, {p}) == sz;
        ASSERT_TRUE(hit);
      }
    }
}

TEST(Sum1, ExhaustiveRoundTripAndCodeProperty) {
  for (int n = 1; n <= 7; ++n) {
    auto best = best_residues(Family::sum1, n);
    ASSERT_GE(best.size * 4, 1LL << (2 * n));
    auto code = codebook(best.spec);
    ASSERT_EQ(static_cast<long long>(code.size()), best.size);
    ASSERT_TRUE(single_defect_disjoint(code, n));
    for (const auto& x : code)
      for (int d = 1; d <= 4 * n; ++d)
        ASSERT_EQ(decode({apply_defects(x, DefectSet{d}), DefectSet{d}, n}, best.spec), x);
  }
  EXPECT_GE(best_residues(Family::sum1, 3).size, 16);
}

TEST(Svt1, ExhaustiveRoundTripAndCodeProperty) {
  for (int n = 3; n <= 7; ++n) {
    auto best = best_residues(Family::svt1, n);
    ASSERT_GE(best.size * 10, 1LL << (2 * n));
    auto code = codebook(best.spec);
    ASSERT_TRUE(single_defect_disjoint(code, n));
    for (const auto& x : code)
      for (int d = 1; d <= 4 * n; ++d)
        ASSERT_EQ(decode({apply_defects(x, DefectSet{d}), DefectSet{d}, n}, best.spec), x);
  }
}

// Oracle: members of x's own class inside its confusable ball.  The decoder must return x when it
// is the only one and refuse otherwise.
namespace {

bool unique_in_ball(const Word& x, const Spec& spec, const DefectSet& delta) {
  for (const auto& y : confusable_ball(x, delta))
    if (y != x && membership(spec, y)) return false;
  return true;
}

void expect_exact(const Word& x, const Spec& spec, const DefectSet& delta, long long& refused) {
  Instance in{apply_defects(x, delta), delta, static_cast<int>(x.size())};
  if (unique_in_ball(x, spec, delta)) {
    ASSERT_EQ(decode(in, spec), x);
  } else {
    ++refused;
    ASSERT_THROW(decode(in, spec), DecodeFailure);
  }
}

}  // namespace

TEST(Array2, ExhaustiveSmallLengths) {
  long long refused = 0;
  for (int n = 3; n <= 5; ++n)
    for (const auto& x : all_words(n)) {
      auto spec = residues_of(x, Family::array2);
      for (int d1 = 1; d1 <= 4 * n; ++d1)
        for (int d2 = d1 + 1; d2 <= 4 * n; ++d2) expect_exact(x, spec, DefectSet{d1, d2}, refused);
    }
  EXPECT_GT(refused, 0);
}

TEST(Array2, SampledPartialHitsAtLength16) {
  std::mt19937_64 rng(3);
  const int n = 16;
  long long refused = 0, total = 0;
  for (int t = 0; t < 60; ++t) {
    Word x(n);
    for (auto& s : x) s = static_cast<Symbol>(rng() % 4 + 1);
    auto spec = residues_of(x, Family::array2);
    auto c = cycles(x);
    std::set<int> cs(c.begin(), c.end());
    for (int d1 = 1; d1 <= 4 * n; ++d1)
      for (int d2 = d1 + 1; d2 <= 4 * n; ++d2) {
        if (cs.count(d1) + cs.count(d2) != 1) continue;
        ++total;
        expect_exact(x, spec, DefectSet{d1, d2}, refused);
      }
  }
  EXPECT_LT(refused, total);
}

TEST(Array2, ResiduesAtBestParamsBoundRedundancy) {
  auto best = best_residues(Family::array2, 6);
  EXPECT_EQ(static_cast<int>(best.spec.row_sums.size()), kArrayRows);
  EXPECT_GE(static_cast<double>(best.size), std::pow(4.0, 6) / (std::pow(3.0, 18) * 6));
}

TEST(Decode, ChannelContract) {
  Instance bad{W("12"), DefectSet{3}, 5};
  EXPECT_THROW(decode(bad, sum1(5, 0)), ChannelContractError);
}
