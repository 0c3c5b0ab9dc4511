#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "syndef/core.hpp"
#include "syndef/errors.hpp"

namespace syndef::binary {

using BitSpan = std::span<const std::uint8_t>;

// Closed interval of 1-based positions.
struct Interval {
  int start = 1;
  int length = 0;
  int end() const noexcept { return start + length - 1; }
  bool contains(int p) const noexcept { return p >= start && p <= end(); }
  bool operator==(const Interval&) const = default;
};

inline long long mod(long long v, long long m) { return ((v % m) + m) % m; }

// Bits needed to store any value in [0, modulus).
inline int field_width(unsigned long long modulus) {
  return modulus <= 2 ? 1 : static_cast<int>(std::bit_width(modulus - 1));
}

inline void append_field(Bits& out, unsigned long long value, int width) {
  for (int i = width - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>((value >> i) & 1ULL));
}

inline unsigned long long read_field(BitSpan bits, std::size_t offset, int width) {
  if (offset + static_cast<std::size_t>(width) > bits.size()) throw DecodeFailure("field read past end");
  unsigned long long v = 0;
  for (int i = 0; i < width; ++i) v = (v << 1) | bits[offset + i];
  return v;
}

inline int weight(BitSpan bits) {
  int w = 0;
  for (auto b : bits) w += b;
  return w;
}

inline long long vt_syndrome(BitSpan bits) {
  long long s = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) s += static_cast<long long>(i + 1) * bits[i];
  return s;
}

inline Bits insert_bit(BitSpan w, std::size_t pos, std::uint8_t bit) {
  Bits out(w.begin(), w.end());
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), bit);
  return out;
}

// Removes the given 1-based positions (distinct).
inline Bits erase_positions(BitSpan w, std::vector<int> positions) {
  std::sort(positions.begin(), positions.end());
  Bits out;
  out.reserve(w.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (k < positions.size() && positions[k] == static_cast<int>(i) + 1) {
      ++k;
      continue;
    }
    out.push_back(w[i]);
  }
  return out;
}

// True when `received` is `codeword` with one position deleted from each interval.
inline bool deletable_within(BitSpan codeword, BitSpan received, std::span<const Interval> intervals) {
  if (received.size() + intervals.size() != codeword.size()) return false;
  const int n = static_cast<int>(codeword.size());
  auto check = [&](std::vector<int> pos) {
    auto e = erase_positions(codeword, std::move(pos));
    return std::equal(e.begin(), e.end(), received.begin(), received.end());
  };
  if (intervals.empty()) return check({});
  if (intervals.size() == 1) {
    for (int p = std::max(1, intervals[0].start); p <= std::min(n, intervals[0].end()); ++p)
      if (check({p})) return true;
    return false;
  }
  if (intervals.size() == 2) {
    for (int p = std::max(1, intervals[0].start); p <= std::min(n, intervals[0].end()); ++p)
      for (int q = std::max(1, intervals[1].start); q <= std::min(n, intervals[1].end()); ++q)
        if (p != q && check({p, q})) return true;
    return false;
  }
  throw ParameterError("at most two deletion intervals supported");
}

// Classic single-deletion decoder for VT_a(n); modulus defaults to n + 1 and may be larger.
inline Bits vt_decode(BitSpan received, long long a, int n, long long modulus = 0) {
  if (modulus == 0) modulus = n + 1;
  if (modulus < n + 1) throw ParameterError("VT modulus must be at least n + 1");
  if (static_cast<int>(received.size()) == n) {
    if (mod(vt_syndrome(received) - a, modulus) != 0) throw DecodeFailure("full-length word is not a VT member");
    return Bits(received.begin(), received.end());
  }
  if (static_cast<int>(received.size()) != n - 1) throw ChannelContractError("VT decoder expects one deletion");
  const int w = weight(received);
  const long long d = mod(a - vt_syndrome(received), modulus);
  if (d > n) throw DecodeFailure("VT deficiency out of range");
  Bits out;
  if (d <= w) {
    // insert 0 with exactly d ones to its right
    int ones = 0;
    std::size_t p = received.size();
    while (ones < d) ones += received[--p];
    out = insert_bit(received, p, 0);
  } else {
    // insert 1 with exactly d - w - 1 zeros to its left
    long long zeros = 0;
    std::size_t p = 0;
    while (zeros < d - w - 1) zeros += (received[p++] == 0);
    out = insert_bit(received, p, 1);
  }
  if (mod(vt_syndrome(out) - a, modulus) != 0) throw DecodeFailure("VT reconstruction inconsistent");
  return out;
}

// Shifted VT: VT syndrome mod `window`, weight mod 2.  Corrects one deletion in a known window of that width.
struct SvtParams {
  long long a = 0;
  int b = 0;
  int window = 0;
};

inline bool svt_member(BitSpan bits, const SvtParams& p) {
  return mod(vt_syndrome(bits) - p.a, p.window) == 0 && weight(bits) % 2 == p.b % 2;
}

inline SvtParams svt_params(BitSpan bits, int window) {
  return {mod(vt_syndrome(bits), window), weight(bits) % 2, window};
}

// window_start: 1-based position in the original word where the deleted bit may start.
inline Bits svt_decode(BitSpan received, int window_start, const SvtParams& p) {
  if (p.window < 1) throw ParameterError("SVT window must be positive");
  const int n = static_cast<int>(received.size()) + 1;
  const int lo = std::max(1, window_start), hi = std::min(n, window_start + p.window - 1);
  std::set<Bits> found;
  for (int pos = lo; pos <= hi; ++pos)
    for (std::uint8_t b : {std::uint8_t{0}, std::uint8_t{1}}) {
      auto y = insert_bit(received, static_cast<std::size_t>(pos - 1), b);
      if (svt_member(y, p)) found.insert(std::move(y));
    }
  if (found.size() != 1)
    throw DecodeFailure("SVT decode found " + std::to_string(found.size()) + " candidates");
  return *found.begin();
}

}  // namespace syndef::binary
