#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "syndef/binary.hpp"

namespace syndef::binary {

// Column-major P x (N/P) array with zero padding.  Row sums mod 3 and a weighted VT sum
// sum_i 3^(i-1) VT(row_i) mod 3^P * length.
struct ArrayCodeParams {
  int rows = 0;
  int length = 0;
  std::vector<int> row_sums;
  long long weighted = 0;
  long long modulus = 0;
  bool operator==(const ArrayCodeParams&) const = default;
};

inline long long pow3(int p) {
  long long v = 1;
  for (int i = 0; i < p; ++i) v *= 3;
  return v;
}

inline long long array_modulus(int rows, int length) { return pow3(rows) * std::max(1, length); }

inline int padded_length(int length, int rows) { return (length + rows - 1) / rows * rows; }

// modulus_length sets the weighted modulus 3^P * modulus_length (defaults to the word length).
inline ArrayCodeParams array_syndromes(BitSpan word, int rows, int modulus_length = -1) {
  if (rows < 1) throw ParameterError("array code needs at least one row");
  const int len = static_cast<int>(word.size());
  if (modulus_length < 0) modulus_length = len;
  if (modulus_length < len) throw ParameterError("weighted modulus too small for the word");
  ArrayCodeParams p{rows, len, std::vector<int>(rows, 0), 0, array_modulus(rows, modulus_length)};
  std::vector<long long> vt(rows, 0);
  for (int i = 0; i < len; ++i) {
    int r = i % rows, col = i / rows + 1;
    p.row_sums[r] += word[i];
    vt[r] += static_cast<long long>(col) * word[i];
  }
  for (auto& s : p.row_sums) s %= 3;
  long long w = 1;
  for (int r = 0; r < rows; ++r, w *= 3) p.weighted = mod(p.weighted + w * vt[r], p.modulus);
  return p;
}

inline bool array_member(BitSpan word, const ArrayCodeParams& p) {
  return static_cast<int>(word.size()) == p.length && array_syndromes(word, p.rows, static_cast<int>(p.modulus / pow3(p.rows))) == p;
}

namespace detail {

inline void mark(std::vector<char>& mask, int lo, int hi) {
  for (int p = std::max(1, lo); p <= std::min(static_cast<int>(mask.size()), hi); ++p) mask[p - 1] = 1;
}

// Widens bursts to length P (leftmost alignment inside the padded word); an overlapping pair is
// re-expressed as two consecutive length-P bursts.
inline std::vector<char> widened_mask(std::vector<Interval> bursts, int rows, int padded) {
  std::vector<char> mask(padded, 0);
  std::sort(bursts.begin(), bursts.end(), [](auto& a, auto& b) { return a.start < b.start; });
  auto place = [&](int start, int len) { return std::max(1, std::min(start, padded - len + 1)); };
  if (bursts.size() == 2 && bursts[1].start <= bursts[0].end()) {
    int s = place(bursts[0].start, 2 * rows);
    mark(mask, s, s + 2 * rows - 1);
    return mask;
  }
  std::vector<std::pair<int, int>> w;
  for (const auto& b : bursts) {
    int s = place(b.start, rows);
    w.emplace_back(s, s + rows - 1);
  }
  if (w.size() == 2 && w[1].first <= w[0].second) {
    int s = place(w[0].first, 2 * rows);
    mark(mask, s, s + 2 * rows - 1);
    return mask;
  }
  for (auto [lo, hi] : w) mark(mask, lo, hi);
  return mask;
}

}  // namespace detail

// Fills at most two erasure bursts (each of length <= P).  Values of `word` inside the bursts are ignored.
// `weighted_sums`, when given, receives the weighted syndrome of every ambiguous-row assignment
// (the decoder needs them pairwise distinct).
inline Bits array_erasure_decode(BitSpan word, std::span<const Interval> bursts, const ArrayCodeParams& p,
                                 std::vector<long long>* weighted_sums = nullptr) {
  const int len = p.length, rows = p.rows;
  if (static_cast<int>(word.size()) != len) throw ParameterError("erasure word length mismatch");
  if (bursts.size() > 2) throw ParameterError("at most two erasure bursts");
  for (const auto& b : bursts)
    if (b.length < 1 || b.length > rows || b.start < 1 || b.end() > len)
      throw ParameterError("erasure burst outside word or longer than P");
  const int padded = padded_length(len, rows);
  auto mask = detail::widened_mask({bursts.begin(), bursts.end()}, rows, padded);
  for (int i = len; i < padded; ++i) mask[i] = 0;  // padding is known

  Bits x(padded, 0);
  for (int i = 0; i < len; ++i) x[i] = mask[i] ? 0 : word[i];

  struct Ambiguous {
    int row, k, l;  // 1-based columns of the two erasures
  };
  std::vector<Ambiguous> amb;
  for (int r = 0; r < rows; ++r) {
    std::vector<int> cols;
    int known = 0;
    for (int i = r; i < padded; i += rows) {
      if (mask[i]) cols.push_back(i / rows + 1);
      else known += x[i];
    }
    int missing = static_cast<int>(mod(p.row_sums[r] - known, 3));
    auto at = [&](int col) -> std::uint8_t& { return x[(col - 1) * rows + r]; };
    if (cols.size() > 2) throw DecodeFailure("more than two erasures in a row");
    if (cols.empty()) {
      if (missing) throw DecodeFailure("row sum inconsistent");
    } else if (cols.size() == 1) {
      if (missing > 1) throw DecodeFailure("row sum inconsistent");
      at(cols[0]) = static_cast<std::uint8_t>(missing);
    } else if (missing == 1) {
      amb.push_back({r, cols[0], cols[1]});
    } else {
      at(cols[0]) = at(cols[1]) = (missing == 2);
    }
  }

  if (!amb.empty()) {
    std::vector<long long> vt(rows, 0);
    for (int i = 0; i < padded; ++i) vt[i % rows] += static_cast<long long>(i / rows + 1) * x[i];
    std::vector<long long> w3(rows, 1);
    for (int r = 1; r < rows; ++r) w3[r] = w3[r - 1] * 3;
    long long base = 0;
    for (int r = 0; r < rows; ++r) base = mod(base + w3[r] * vt[r], p.modulus);
    int hits = 0;
    unsigned long long chosen = 0;
    for (unsigned long long m = 0; m < (1ULL << amb.size()); ++m) {
      long long s = base;
      for (std::size_t j = 0; j < amb.size(); ++j)
        s += w3[amb[j].row] * ((m >> j & 1) ? amb[j].l : amb[j].k);
      if (weighted_sums) weighted_sums->push_back(mod(s, p.modulus));
      if (mod(s - p.weighted, p.modulus) == 0) {
        ++hits;
        chosen = m;
      }
    }
    if (hits != 1) throw DecodeFailure("weighted syndrome matched " + std::to_string(hits) + " row orders");
    for (std::size_t j = 0; j < amb.size(); ++j) {
      int col = (chosen >> j & 1) ? amb[j].l : amb[j].k;
      x[(col - 1) * rows + amb[j].row] = 1;
    }
  }

  x.resize(len);
  std::vector<char> erased(len, 0);
  for (const auto& b : bursts) detail::mark(erased, b.start, b.end());
  for (int i = 0; i < len; ++i)
    if (!erased[i] && x[i] != word[i]) throw DecodeFailure("decoded word disagrees with known bits");
  return x;
}

// One deletion per interval (0..2 intervals, each of length <= P).
inline Bits array_bounded_decode(BitSpan received, std::span<const Interval> intervals, const ArrayCodeParams& p) {
  const int len = p.length;
  if (static_cast<int>(received.size() + intervals.size()) != len)
    throw ParameterError("received length does not match interval count");
  for (const auto& iv : intervals)
    if (iv.start < 1 || iv.end() > len || iv.length < 1) throw ParameterError("interval outside word");
  Bits word(len, 0);
  for (int pos = 1; pos <= len; ++pos) {
    bool inside = false;
    int before = 0;
    for (const auto& iv : intervals) {
      inside |= iv.contains(pos);
      before += iv.end() < pos;
    }
    if (!inside) word[pos - 1] = received[pos - 1 - before];
  }
  return array_erasure_decode(word, intervals, p);
}

}  // namespace syndef::binary
