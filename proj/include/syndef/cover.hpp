#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "syndef/core.hpp"

namespace syndef::sdcc {

// ceil(log2 n / (2 - log2 3)) + 1 strands per block.
inline int formula_m1(int n) {
  if (n < 2) throw ParameterError("cover formula needs n >= 2");
  return static_cast<int>(std::ceil(std::log2(n) / (2.0 - std::log2(3.0)) - 1e-12)) + 1;
}

// ceil(28 log2 n) + 5
inline int formula_window(int n) {
  if (n < 2) throw ParameterError("window formula needs n >= 2");
  return static_cast<int>(std::ceil(28.0 * std::log2(n) - 1e-12)) + 5;
}

// ceil(14 log2 n), at least 2.
inline int position_modulus(int n) {
  if (n < 2) throw ParameterError("position-sum modulus needs n >= 2");
  return std::max(2, static_cast<int>(std::ceil(14.0 * std::log2(n) - 1e-12)));
}

struct CoverPlan {
  int n = 0;
  int m1 = 0;
  std::vector<int> shifts;
  std::vector<std::vector<int>> uncovered;  // per block: |T_0| = n, then after each strand

  std::size_t cover_count() const noexcept { return shifts.size(); }
  bool contracts() const {
    for (const auto& b : uncovered)
      for (std::size_t i = 1; i < b.size(); ++i)
        if (4 * b[i] > 3 * b[i - 1]) return false;
    return true;
  }
};

inline bool covers_all(const std::vector<Word>& bases, const std::vector<int>& shifts, int n) {
  std::vector<char> hit(4 * n + 1, 0);
  for (std::size_t i = 0; i < shifts.size() && i < bases.size(); ++i)
    for (int c : cycles(bases[i])) {
      int v = c + shifts[i];
      if (v >= 1 && v <= 4 * n) hit[v] = 1;
    }
  return std::all_of(hit.begin() + 1, hit.end(), [](char h) { return h != 0; });
}

struct BlockPlan {
  std::vector<int> shifts;
  std::vector<int> uncovered;  // n, then after each strand
};

// Greedy for the block [t, t + n - 1].  Each strand takes the best of four consecutive shifts
// starting at t - cycle_1, clamped so every option is admissible.
inline BlockPlan greedy_block(std::span<const Word> bases, int t) {
  const int n = static_cast<int>(bases.front().size());
  std::vector<char> covered(n, 0);
  int left = n;
  BlockPlan bp{{}, {left}};
  for (const auto& x : bases) {
    auto c = cycles(x);
    auto [lo, hi] = shift_range(x);
    int base = std::clamp(t - c.front(), lo, hi - 3);
    int best = base, best_gain = -1;
    for (int a = base; a <= base + 3; ++a) {
      int gain = 0;
      for (int v : c) {
        int p = v + a - t;
        gain += p >= 0 && p < n && !covered[p];
      }
      if (gain > best_gain) best = a, best_gain = gain;
    }
    for (int v : c) {
      int p = v + best - t;
      if (p >= 0 && p < n && !covered[p]) covered[p] = 1, --left;
    }
    bp.shifts.push_back(best);
    bp.uncovered.push_back(left);
  }
  return bp;
}

// Block b (t = b n + 1) is served by bases[b m1 .. b m1 + m1 - 1].
inline CoverPlan select_cover_shifts(const std::vector<Word>& bases, int m1) {
  if (m1 < 1) throw ParameterError("cover needs at least one strand per block");
  if (bases.size() != static_cast<std::size_t>(4 * m1)) throw ParameterError("cover needs exactly 4 m1 strands");
  const int n = static_cast<int>(bases.front().size());
  for (const auto& b : bases)
    if (static_cast<int>(b.size()) != n) throw ParameterError("cover strands differ in length");
  CoverPlan plan{n, m1, {}, {}};
  for (int b = 0; b < 4; ++b) {
    auto bp = greedy_block(std::span<const Word>(bases).subspan(b * m1, m1), b * n + 1);
    plan.shifts.insert(plan.shifts.end(), bp.shifts.begin(), bp.shifts.end());
    plan.uncovered.push_back(std::move(bp.uncovered));
  }
  if (!covers_all(bases, plan.shifts, n)) throw ConstructionError("greedy shifts leave a cycle uncovered");
  return plan;
}

// The strand synthesized on consecutive cycles starting with symbol `first`.
inline Word template_strand(int n, int first) {
  Word w(n);
  for (int i = 0; i < n; ++i) w[i] = wrap4(first + i);
  return w;
}

}  // namespace syndef::sdcc
