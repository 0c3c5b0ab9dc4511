#pragma once

#include <array>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "syndef/core.hpp"
#include "syndef/kdcc.hpp"

namespace syndef::bounds {

constexpr int kBlock = 5;
constexpr int kMaxCountN = 30;    // exact count and rational check stay inside __int128
constexpr int kMaxVerifyN = 7;

// The four length-5 pattern sets.  Each set becomes 1234 after deleting its second cycle.
inline const std::array<std::vector<Word>, 4>& block_patterns() {
  static const std::array<std::vector<Word>, 4> sets = [] {
    const std::array<std::array<const char*, 4>, 4> raw{{
        {"11234", "12134", "12314", "12341"},
        {"22341", "23241", "23421", "23412"},
        {"33412", "34312", "34132", "34123"},
        {"44123", "41423", "41243", "41234"},
    }};
    std::array<std::vector<Word>, 4> s;
    for (int i = 0; i < 4; ++i)
      for (const char* w : raw[i]) s[i].push_back(parse_word(w));
    return s;
  }();
  return sets;
}

// Sigma^5 minus the 16 patterns, in lexicographic order.
inline const std::vector<Word>& free_blocks() {
  static const std::vector<Word> e = [] {
    std::set<Word> used;
    for (const auto& set : block_patterns()) used.insert(set.begin(), set.end());
    std::vector<Word> out;
    for (auto& w : kdcc::enumerate_words(kBlock))
      if (!used.count(w)) out.push_back(std::move(w));
    return out;
  }();
  return e;
}

struct Clique {
  std::vector<Word> members;
  int delta = 0;  // common defect for size-4 cliques, 0 for singletons
};

struct CliqueCover {
  int n = 0;
  std::vector<Clique> cliques;
};

namespace detail {

inline std::vector<Word> words_over(const std::vector<Word>& blocks, int count) {
  std::vector<Word> out{Word{}};
  for (int i = 0; i < count; ++i) {
    std::vector<Word> next;
    for (const auto& p : out)
      for (const auto& b : blocks) {
        Word w = p;
        w.insert(w.end(), b.begin(), b.end());
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

inline std::vector<Word> all_words(int len) { return len == 0 ? std::vector<Word>{Word{}} : kdcc::enumerate_words(len); }

inline Word concat(const Word& a, const Word& b, const Word& c) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  w.insert(w.end(), c.begin(), c.end());
  return w;
}

}  // namespace detail

// Q_z for z = (p, r, i) with p in E^i and r in Sigma^(n-5i-5): four cliques p X r, X in {A,B,C,D}.
// Strands whose first floor(n/5) blocks all lie in E stay singletons.
inline CliqueCover build_clique_cover(int n) {
  if (n < kBlock) throw ParameterError("clique cover needs n >= 5");
  if (n > kMaxVerifyN) throw ParameterError("materialized clique cover limited to n <= 7");
  const int k = n / kBlock;
  CliqueCover q{n, {}};
  for (int i = 0; i < k; ++i) {
    auto prefixes = detail::words_over(free_blocks(), i);
    auto suffixes = detail::all_words(n - kBlock * i - kBlock);
    for (const auto& p : prefixes)
      for (const auto& r : suffixes)
        for (const auto& set : block_patterns()) {
          Clique c;
          for (const auto& b : set) c.members.push_back(detail::concat(p, b, r));
          c.delta = cycles(c.members[0])[kBlock * i] + 4;
          q.cliques.push_back(std::move(c));
        }
  }
  for (const auto& p : detail::words_over(free_blocks(), k))
    for (const auto& r : detail::all_words(n % kBlock)) q.cliques.push_back({{detail::concat(p, {}, r)}, 0});
  return q;
}

struct CoverSize {
  unsigned long long count = 0;  // from the construction's counting
  long double closed_form = 0;   // 4^(n-1) (1 + 3 (1008/1024)^floor(n/5))
  bool agree = false;            // exact rational comparison
};

inline CoverSize cover_size(int n) {
  if (n < kBlock) throw ParameterError("cover size needs n >= 5");
  if (n > kMaxCountN) throw ParameterError("cover size limited to n <= 30");
  using i128 = __int128;
  const int k = n / kBlock;
  const i128 e = static_cast<i128>(free_blocks().size());
  auto pw = [](i128 b, int p) {
    i128 v = 1;
    while (p-- > 0) v *= b;
    return v;
  };
  i128 count = 0;
  for (int i = 0; i < k; ++i) count += 4 * pw(e, i) * pw(4, n - kBlock * i - kBlock);
  count += pw(e, k) * pw(4, n % kBlock);
  CoverSize s;
  s.count = static_cast<unsigned long long>(count);
  s.closed_form = std::pow(4.0L, n - 1) * (1.0L + 3.0L * std::pow(static_cast<long double>(e) / 1024.0L, k));
  // count * 1024^k == 4^(n-1) (1024^k + 3 * 1008^k)
  s.agree = count * pw(1024, k) == pw(4, n - 1) * (pw(1024, k) + 3 * pw(e, k));
  if (!s.agree) throw ConstructionError("clique cover count disagrees with the closed form");
  return s;
}

struct CoverCheck {
  bool ok = true;
  std::string witness;  // uncovered strand or non-adjacent pair
};

inline bool confusable(const Word& x, const Word& y, int n) {
  for (int d = 1; d <= 4 * n; ++d)
    if (apply_defects(x, DefectSet{d}) == apply_defects(y, DefectSet{d})) return true;
  return false;
}

inline CoverCheck verify_cover(const CliqueCover& q) {
  if (q.n > kMaxVerifyN) throw ParameterError("cover verification limited to n <= 7");
  std::set<Word> seen;
  for (const auto& c : q.cliques) {
    seen.insert(c.members.begin(), c.members.end());
    for (std::size_t i = 0; i < c.members.size(); ++i)
      for (std::size_t j = i + 1; j < c.members.size(); ++j)
        if (!confusable(c.members[i], c.members[j], q.n))
          return {false, "not adjacent: " + format_digits(c.members[i]) + " " + format_digits(c.members[j])};
  }
  for (const auto& x : kdcc::enumerate_words(q.n))
    if (!seen.count(x)) return {false, "uncovered: " + format_digits(x)};
  return {};
}

inline CoverCheck verify_cover(int n) { return verify_cover(build_clique_cover(n)); }

struct SizeBounds {
  int n = 0;
  long long best_sum1_size = 0;
  unsigned long long cover_size = 0;
  long double closed_form = 0;
  double redundancy_bits_lower_bound = 0;  // 2n - log2(cover_size)
  double redundancy_quaternary = 0;        // n - log4(cover_size), i.e. bits / 2
  double vanishing_term_bits = 0;          // log2(1 + 3 (1008/1024)^floor(n/5)) = 2 - bound
};

inline SizeBounds kdcc_size_bounds(int n) {
  if (n < kBlock) throw ParameterError("size bounds need n >= 5");
  if (n > 10) throw ParameterError("exact sum1 size limited to n <= 10");
  auto cs = cover_size(n);
  SizeBounds b;
  b.n = n;
  b.best_sum1_size = kdcc::best_residues(kdcc::Family::sum1, n).size;
  b.cover_size = cs.count;
  b.closed_form = cs.closed_form;
  b.redundancy_bits_lower_bound = 2.0 * n - std::log2(static_cast<double>(cs.count));
  b.redundancy_quaternary = b.redundancy_bits_lower_bound / 2.0;
  b.vanishing_term_bits = std::log2(1.0 + 3.0 * std::pow(static_cast<double>(free_blocks().size()) / 1024.0, n / kBlock));
  if (static_cast<unsigned long long>(b.best_sum1_size) > b.cover_size)
    throw ConstructionError("sum1 codebook exceeds the clique cover bound");
  return b;
}

}  // namespace syndef::bounds
