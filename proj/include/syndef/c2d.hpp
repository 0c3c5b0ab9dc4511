#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "syndef/binary.hpp"
#include "syndef/core.hpp"
#include "syndef/cover.hpp"
#include "syndef/sketch.hpp"

namespace syndef::sdcc {

inline long long weighted_run_sum(std::span<const Symbol> x) {
  auto r = run_sequence(comparison_bits(x));
  long long s = 0;
  for (std::size_t i = 0; i < r.size(); ++i) s += static_cast<long long>(x[i]) * r[i];
  return s;
}

// Quaternary two-deletion code: regular signature with a two-deletion sketch, weighted-run sum
// mod 4n, symbol counts mod 3 and symbol position sums mod ceil(14 log2 n).
struct C2dParams {
  int n = 0;
  std::uint64_t sketch = 0;
  std::array<int, 4> counts{};
  std::array<long long, 4> position_sums{};
  long long weighted_run = 0;
  int position_modulus = 2;
  int regular_window = 4;

  auto operator<=>(const C2dParams&) const = default;
  bool operator==(const C2dParams&) const = default;
};

inline std::array<long long, 4> position_sums(std::span<const Symbol> x, int modulus) {
  std::array<long long, 4> s{};
  for (std::size_t i = 0; i < x.size(); ++i) s[x[i] - 1] += static_cast<long long>(i) + 1;
  for (auto& v : s) v %= modulus;
  return s;
}

inline std::array<int, 4> symbol_counts(std::span<const Symbol> x) {
  std::array<int, 4> c{};
  for (auto s : x) ++c[s - 1];
  return c;
}

inline C2dParams c2d_params_of(std::span<const Symbol> x, int regular_window = 0) {
  const int n = static_cast<int>(x.size());
  if (n < 3) throw ParameterError("C2D needs n >= 3");
  C2dParams p;
  p.n = n;
  p.sketch = binary::sketch_xi(comparison_bits(x)).residue;
  p.counts = symbol_counts(x);
  for (auto& c : p.counts) c %= 3;
  p.position_modulus = position_modulus(n);
  p.position_sums = position_sums(x, p.position_modulus);
  p.weighted_run = weighted_run_sum(x) % (4LL * n);
  p.regular_window = regular_window ? regular_window : default_regular_window(n);
  return p;
}

inline bool c2d_membership(std::span<const Symbol> x, const C2dParams& p) {
  if (static_cast<int>(x.size()) != p.n || p.n < 3) return false;
  if (!is_regular(comparison_bits(x), p.regular_window)) return false;
  return c2d_params_of(x, p.regular_window) == p;
}

enum class C2dBranch { none, single, spread, alternating };

inline std::string to_string(C2dBranch b) {
  switch (b) {
    case C2dBranch::none: return "none";
    case C2dBranch::single: return "single";
    case C2dBranch::spread: return "spread";
    case C2dBranch::alternating: return "alternating";
  }
  return "?";
}

struct C2dDecode {
  Word word;
  Bits signature;
  C2dBranch branch = C2dBranch::none;
  int alternating_span = 0;  // length of the alternating substring holding the deletions (branch b)
};

namespace detail {

// Longest alternating substring of `bits` containing 0-based positions i and i+1.
inline int alternating_span(const Bits& bits, int i) {
  int lo = i, hi = i + 1;
  while (lo > 0 && bits[lo - 1] != bits[lo]) --lo;
  while (hi + 1 < static_cast<int>(bits.size()) && bits[hi + 1] != bits[hi]) ++hi;
  return hi - lo + 1;
}

}  // namespace detail

inline C2dDecode c2d_decode(std::span<const Symbol> received, const C2dParams& p) {
  const int n = p.n;
  const int k = n - static_cast<int>(received.size());
  if (k < 0 || k > 2) throw ChannelContractError("C2D decoder handles at most two deletions");
  C2dDecode out;
  if (k == 0) {
    out.word.assign(received.begin(), received.end());
    out.signature = comparison_bits(out.word);
    return out;
  }
  if (n - 1 > binary::kMaxSketchLength) throw ParameterError("signature longer than the sketch supports");
  auto sr = comparison_bits(received);
  binary::XiSketch sk{p.sketch, binary::helberg_modulus(n - 1), n - 1};
  out.signature = binary::xi_decode(sr, sk);

  // Deleted symbols from the counts mod 3.
  auto cr = symbol_counts(received);
  std::vector<Symbol> lost;
  for (int s = 0; s < 4; ++s) {
    int t = static_cast<int>(binary::mod(p.counts[s] - cr[s], 3));
    for (int j = 0; j < t; ++j) lost.push_back(static_cast<Symbol>(s + 1));
  }
  if (static_cast<int>(lost.size()) != k) throw DecodeFailure("symbol counts do not match the deletion count");

  if (k == 1) {
    out.branch = C2dBranch::single;
  } else {
    out.branch = C2dBranch::spread;
    for (int i = 0; i + 1 < n - 1; ++i) {
      if (out.signature[i] == out.signature[i + 1]) continue;
      if (binary::erase_positions(out.signature, {i + 1, i + 2}) != sr) continue;
      out.branch = C2dBranch::alternating;
      out.alternating_span = std::max(out.alternating_span, detail::alternating_span(out.signature, i));
    }
  }

  const long long wmod = 4LL * n;
  std::set<Word> found;
  auto consider = [&](Word&& y) {
    if (comparison_bits(y) != out.signature) return;
    if (weighted_run_sum(y) % wmod != p.weighted_run) return;
    if (position_sums(y, p.position_modulus) != p.position_sums) return;
    found.insert(std::move(y));
  };
  if (k == 1) {
    for (int i = 0; i < n; ++i) consider(insert_symbol(received, i, lost[0]));
  } else {
    std::vector<std::pair<Symbol, Symbol>> orders{{lost[0], lost[1]}};
    if (lost[0] != lost[1]) orders.push_back({lost[1], lost[0]});
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (auto [u, v] : orders) consider(insert_symbol(insert_symbol(received, i, u), j, v));
  }
  if (found.size() != 1) throw DecodeFailure("C2D decode found " + std::to_string(found.size()) + " strands");
  out.word = *found.begin();
  return out;
}

}  // namespace syndef::sdcc
