#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "syndef/binary.hpp"

namespace syndef::binary {

// Two-deletion sketch: sum_i v_i x_i mod v_{L+1} with v_i = 1 + v_{i-1} + v_{i-2} (v_i = 0 for i <= 0).
// The weight sequence is superincreasing enough that distinct words sharing a length-(L-2)
// subsequence never share a residue.
struct XiSketch {
  std::uint64_t residue = 0;
  std::uint64_t modulus = 1;
  int length = 0;
  bool operator==(const XiSketch&) const = default;
};

constexpr int kMaxSketchLength = 88;

// v_1..v_{length+1}; the last entry is the modulus.
inline std::vector<std::uint64_t> helberg_weights(int length) {
  if (length < 0 || length > kMaxSketchLength)
    throw ParameterError("sketch length " + std::to_string(length) + " outside [0, " +
                         std::to_string(kMaxSketchLength) + "]");
  std::vector<std::uint64_t> v(length + 1);
  std::uint64_t a = 0, b = 0;  // v_{i-2}, v_{i-1}
  for (int i = 0; i <= length; ++i) {
    v[i] = 1 + a + b;
    a = b;
    b = v[i];
  }
  return v;
}

inline std::uint64_t helberg_modulus(int length) { return helberg_weights(length).back(); }

inline int sketch_width(int length) { return field_width(helberg_modulus(length)); }

// Bits of the sketch for a length-L word: about L log2(golden ratio) + O(1).
inline double sketch_rate() { return std::log2((1.0 + std::sqrt(5.0)) / 2.0); }

inline XiSketch sketch_xi(BitSpan bits) {
  const int len = static_cast<int>(bits.size());
  auto v = helberg_weights(len);
  const std::uint64_t m = v.back();
  std::uint64_t s = 0;
  for (int i = 0; i < len; ++i)
    if (bits[i]) s = (s + v[i]) % m;
  return {s, m, len};
}

inline Bits sketch_bits(const XiSketch& s) {
  Bits out;
  append_field(out, s.residue, field_width(s.modulus));
  return out;
}

inline XiSketch sketch_from_bits(BitSpan bits, int length) {
  auto m = helberg_modulus(length);
  int w = field_width(m);
  if (static_cast<int>(bits.size()) != w) throw ParameterError("sketch bit string has wrong width");
  auto r = read_field(bits, 0, w);
  if (r >= m) throw DecodeFailure("sketch residue out of range");
  return {r, m, length};
}

// All distinct supersequences of `received` of the sketch's length whose residue matches.  The
// residue of each candidate is evaluated in O(1) from prefix sums.  `modulus` is the sketch's,
// so a deliberately weakened sketch is honoured.
inline std::set<Bits> xi_candidates(BitSpan received, const XiSketch& sk) {
  const int L = sk.length;
  const int r = static_cast<int>(received.size());
  const int d = L - r;
  if (d < 0 || d > 2) throw ChannelContractError("sketch decoder handles at most two deletions");
  auto v = helberg_weights(L);
  const std::uint64_t m = sk.modulus;
  auto w = [&](int idx) { return v[idx] % m; };  // weight of 0-based final index idx
  std::set<Bits> out;
  if (d == 0) {
    std::uint64_t s = 0;
    for (int i = 0; i < r; ++i)
      if (received[i]) s = (s + w(i)) % m;
    if (s == sk.residue % m) out.insert(Bits(received.begin(), received.end()));
    return out;
  }
  // shifted prefix sums: Wk[j] = sum_{i<j} received[i] * weight(i + k)
  std::vector<std::vector<std::uint64_t>> W(d + 1, std::vector<std::uint64_t>(r + 1, 0));
  for (int k = 0; k <= d; ++k)
    for (int i = 0; i < r; ++i) W[k][i + 1] = (W[k][i] + (received[i] ? w(i + k) : 0)) % m;
  auto seg = [&](int k, int from, int to) { return (W[k][to] + m - W[k][from]) % m; };
  auto add = [m](std::uint64_t a, std::uint64_t b) { return (a + b) % m; };
  const std::uint64_t target = sk.residue % m;
  if (d == 1) {
    for (int p = 0; p <= r; ++p)
      for (std::uint8_t b : {std::uint8_t{0}, std::uint8_t{1}}) {
        if (p < r && received[p] == b) continue;  // same word as inserting one step later
        std::uint64_t s = add(add(seg(0, 0, p), b ? w(p) : 0), seg(1, p, r));
        if (s == target) out.insert(insert_bit(received, p, b));
      }
    return out;
  }
  // final indices p < q; received indices [0,p) keep place, [p, q-1) move by 1, [q-1, r) move by 2
  for (int p = 0; p <= r; ++p)
    for (int q = p + 1; q <= r + 1; ++q)
      for (std::uint8_t b1 : {std::uint8_t{0}, std::uint8_t{1}})
        for (std::uint8_t b2 : {std::uint8_t{0}, std::uint8_t{1}}) {
          std::uint64_t s = add(add(add(seg(0, 0, p), b1 ? w(p) : 0), add(seg(1, p, q - 1), b2 ? w(q) : 0)),
                                seg(2, q - 1, r));
          if (s != target) continue;
          auto y = insert_bit(received, p, b1);
          out.insert(insert_bit(y, q, b2));
        }
  return out;
}

inline Bits xi_decode(BitSpan received, const XiSketch& sk) {
  auto c = xi_candidates(received, sk);
  if (c.size() != 1) throw DecodeFailure("sketch decode found " + std::to_string(c.size()) + " candidates");
  return *c.begin();
}

}  // namespace syndef::binary
