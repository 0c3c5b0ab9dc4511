#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "syndef/binary.hpp"
#include "syndef/sketch.hpp"

namespace syndef::binary {

// Windows I_i = [(i-1)rho + 1, (i+1)rho] for i < count, the last one running to n.
inline std::vector<Interval> e1_windows(int n, int rho) {
  if (n < 1 || rho < 1) throw ParameterError("window plan needs n, rho >= 1");
  int blocks = (n + rho - 1) / rho;
  int count = std::max(1, blocks - 1);
  std::vector<Interval> w;
  for (int i = 1; i <= count; ++i) {
    int start = (i - 1) * rho + 1;
    int end = i < count ? (i + 1) * rho : n;
    w.push_back({start, end - start + 1});
  }
  return w;
}

struct E1Sketch {
  std::uint64_t odd = 0;   // windows 1, 3, 5, ...
  std::uint64_t even = 0;  // windows 2, 4, ...
  std::uint64_t modulus = 1;
  int rho = 0;
  int n = 0;
  bool operator==(const E1Sketch&) const = default;
};

inline std::uint64_t e1_modulus(int n, int rho) {
  int longest = 0;
  for (const auto& w : e1_windows(n, rho)) longest = std::max(longest, w.length);
  return helberg_modulus(longest);
}

inline E1Sketch e1_sketch(BitSpan bits, int P1, int P2) {
  if (P1 < 1 || P2 < 1) throw ParameterError("interval lengths must be positive");
  const int n = static_cast<int>(bits.size());
  const int rho = P1 + P2;
  E1Sketch s{0, 0, e1_modulus(n, rho), rho, n};
  auto w = e1_windows(n, rho);
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto r = sketch_xi(bits.subspan(w[i].start - 1, w[i].length)).residue;
    auto& acc = (i % 2 == 0) ? s.odd : s.even;
    acc = (acc + r) % s.modulus;
  }
  return s;
}

// Deletions (one per interval) whose union fits inside a single window.
inline Bits e1_decode(BitSpan received, std::span<const Interval> intervals, const E1Sketch& sk) {
  const int n = sk.n;
  const int d = static_cast<int>(intervals.size());
  if (d < 1 || d > 2 || static_cast<int>(received.size()) + d != n)
    throw ChannelContractError("window decoder needs one or two deletions matching the intervals");
  int lo = n, hi = 1;
  for (const auto& iv : intervals) {
    lo = std::min(lo, std::max(1, iv.start));
    hi = std::max(hi, std::min(n, iv.end()));
  }
  auto w = e1_windows(n, sk.rho);
  int j = -1;
  for (int i = 0; i < static_cast<int>(w.size()); ++i)
    if (w[i].start <= lo && hi <= w[i].end()) {
      j = i;
      break;
    }
  if (j < 0) throw DecodeFailure("no window contains both deletion intervals");

  std::uint64_t target = (j % 2 == 0) ? sk.odd : sk.even;
  for (int i = j % 2; i < static_cast<int>(w.size()); i += 2) {
    if (i == j) continue;
    int offset = i < j ? 0 : d;  // same-parity windows lie wholly before or after window j
    auto r = sketch_xi(received.subspan(w[i].start - 1 - offset, w[i].length)).residue;
    target = (target + sk.modulus - r % sk.modulus) % sk.modulus;
  }
  const auto& wj = w[j];
  XiSketch local{target, helberg_modulus(wj.length), wj.length};
  if (target >= local.modulus) throw DecodeFailure("window residue out of range");
  auto inner = xi_decode(received.subspan(wj.start - 1, wj.length - d), local);
  Bits out(received.begin(), received.begin() + (wj.start - 1));
  out.insert(out.end(), inner.begin(), inner.end());
  out.insert(out.end(), received.begin() + (wj.end() - d), received.end());
  return out;
}

struct E2Sketch {
  int f0 = 0;        // weight mod 3
  long long f1 = 0;  // sum i x_i mod n+1
  long long f2 = 0;  // sum C(i,2) x_i mod P n
  long long f1_modulus = 1;
  long long f2_modulus = 1;
  int n = 0;
  bool operator==(const E2Sketch&) const = default;
};

inline long long f2_raw(BitSpan bits) {
  long long s = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    long long k = static_cast<long long>(i) + 1;
    s += bits[i] * (k * (k - 1) / 2);
  }
  return s;
}

inline E2Sketch e2_sketch(BitSpan bits, int P1, int P2) {
  const int n = static_cast<int>(bits.size());
  const long long P = std::max(P1, P2);
  E2Sketch s;
  s.n = n;
  s.f1_modulus = n + 1;
  s.f2_modulus = std::max(1LL, P * n);
  s.f0 = weight(bits) % 3;
  s.f1 = mod(vt_syndrome(bits), s.f1_modulus);
  s.f2 = mod(f2_raw(bits), s.f2_modulus);
  return s;
}

struct E2Placement {
  Bits word;
  long long f2 = 0;  // unreduced
};

// Reinsertions consistent with f0 and f1, one bit per interval.
inline std::vector<E2Placement> e2_f1_consistent(BitSpan received, std::span<const Interval> intervals,
                                                 const E2Sketch& sk) {
  const int n = sk.n;
  if (intervals.size() != 2 || static_cast<int>(received.size()) + 2 != n)
    throw ChannelContractError("separated-interval decoder expects exactly two deletions");
  int ones = static_cast<int>(mod(sk.f0 - weight(received), 3));
  std::vector<std::pair<std::uint8_t, std::uint8_t>> bit_options;
  if (ones == 0) bit_options = {{0, 0}};
  else if (ones == 2) bit_options = {{1, 1}};
  else bit_options = {{0, 1}, {1, 0}};
  std::set<Bits> seen;
  std::vector<E2Placement> out;
  const auto& a = intervals[0];
  const auto& b = intervals[1];
  for (int p = std::min(n, a.end()); p >= std::max(1, a.start); --p)
    for (int q = std::min(n, b.end()); q >= std::max(1, b.start); --q) {
      if (p == q) continue;
      for (auto [u, v] : bit_options) {
        int first = std::min(p, q), second = std::max(p, q);
        std::uint8_t bf = p < q ? u : v, bs = p < q ? v : u;
        auto y = insert_bit(insert_bit(received, first - 1, bf), second - 1, bs);
        if (mod(vt_syndrome(y) - sk.f1, sk.f1_modulus) != 0) continue;
        if (!seen.insert(y).second) continue;
        long long f2 = f2_raw(y);
        out.push_back({std::move(y), f2});
      }
    }
  return out;
}

inline Bits e2_decode(BitSpan received, std::span<const Interval> intervals, const E2Sketch& sk) {
  if (intervals.size() == 1) return vt_decode(received, sk.f1, sk.n, sk.f1_modulus);
  std::vector<const Bits*> hits;
  auto cands = e2_f1_consistent(received, intervals, sk);
  for (const auto& c : cands)
    if (mod(c.f2 - sk.f2, sk.f2_modulus) == 0) hits.push_back(&c.word);
  if (hits.size() != 1)
    throw DecodeFailure("f1/f2 placement search found " + std::to_string(hits.size()) + " words");
  return *hits.front();
}

// Threefold repetition; corrects two deletions by rounding run lengths up to multiples of 3.
inline Bits rep3_encode(BitSpan bits) {
  Bits out;
  out.reserve(bits.size() * 3);
  for (auto b : bits) out.insert(out.end(), 3, b);
  return out;
}

inline Bits rep3_decode(BitSpan received, int length) {
  Bits out;
  std::size_t i = 0;
  while (i < received.size()) {
    std::size_t j = i;
    while (j < received.size() && received[j] == received[i]) ++j;
    out.insert(out.end(), (j - i + 2) / 3, received[i]);
    i = j;
  }
  if (static_cast<int>(out.size()) != length) throw DecodeFailure("repetition block inconsistent");
  return out;
}

// Materialized budgets: a Helberg sketch of a length-L word takes ceil((L + 3) log2 phi) + 1 bits.
inline int xi_budget(int length) { return static_cast<int>(std::ceil((length + 3) * sketch_rate())) + 1; }

// r(n, P1, P2): E1 (two window sketches of width 2 rho), E2 (f0, f1 mod n+1, f2 mod P n) and the
// threefold sketch of both.
inline int e_budget(int n, int P1, int P2) {
  const long long P = std::max(P1, P2);
  int summary = 2 * xi_budget(2 * (P1 + P2)) + 2 + field_width(static_cast<unsigned long long>(n) + 1) +
                field_width(static_cast<unsigned long long>(P * n));
  return summary + 3 * xi_budget(summary);
}

// Systematic code x | E1(x) | E2(x) | rep3(xi(E1, E2)) correcting two deletions in known intervals.
class ECode {
 public:
  ECode(int n, int P1, int P2) : n_(n), P1_(P1), P2_(P2) {
    if (n < 3) throw ParameterError("E code needs n >= 3");
    if (P1 < 2 || P2 < 2) throw ParameterError("E code needs P1, P2 >= 2");
    e1_mod_ = e1_modulus(n, P1 + P2);
  }

  int n() const noexcept { return n_; }
  int P1() const noexcept { return P1_; }
  int P2() const noexcept { return P2_; }
  int rho() const noexcept { return P1_ + P2_; }
  long long P() const noexcept { return std::max(P1_, P2_); }
  int e1_bits() const { return 2 * field_width(e1_mod_); }
  int f1_bits() const { return field_width(static_cast<unsigned long long>(n_) + 1); }
  int f2_bits() const { return field_width(static_cast<unsigned long long>(P() * n_)); }
  int e2_bits() const { return 2 + f1_bits() + f2_bits(); }
  int summary_bits() const { return e1_bits() + e2_bits(); }
  int xi_bits() const { return sketch_width(summary_bits()); }
  int redundancy() const { return summary_bits() + 3 * xi_bits(); }
  int length() const { return n_ + redundancy(); }

  Bits summary(BitSpan x) const {
    auto e1 = e1_sketch(x, P1_, P2_);
    auto e2 = e2_sketch(x, P1_, P2_);
    Bits s;
    int w1 = field_width(e1_mod_);
    append_field(s, e1.odd, w1);
    append_field(s, e1.even, w1);
    append_field(s, static_cast<unsigned long long>(e2.f0), 2);
    append_field(s, static_cast<unsigned long long>(e2.f1), f1_bits());
    append_field(s, static_cast<unsigned long long>(e2.f2), f2_bits());
    return s;
  }

  Bits encode(BitSpan x) const {
    if (static_cast<int>(x.size()) != n_) throw ParameterError("E code payload length mismatch");
    Bits out(x.begin(), x.end());
    auto s = summary(x);
    out.insert(out.end(), s.begin(), s.end());
    auto t = rep3_encode(sketch_bits(sketch_xi(s)));
    out.insert(out.end(), t.begin(), t.end());
    return out;
  }

  E1Sketch parse_e1(BitSpan s) const {
    int w1 = field_width(e1_mod_);
    E1Sketch e1{read_field(s, 0, w1), read_field(s, w1, w1), e1_mod_, rho(), n_};
    if (e1.odd >= e1_mod_ || e1.even >= e1_mod_) throw DecodeFailure("E1 residue out of range");
    return e1;
  }

  E2Sketch parse_e2(BitSpan s) const {
    std::size_t off = static_cast<std::size_t>(e1_bits());
    E2Sketch e2;
    e2.n = n_;
    e2.f1_modulus = n_ + 1;
    e2.f2_modulus = P() * n_;
    e2.f0 = static_cast<int>(read_field(s, off, 2));
    e2.f1 = static_cast<long long>(read_field(s, off + 2, f1_bits()));
    e2.f2 = static_cast<long long>(read_field(s, off + 2 + f1_bits(), f2_bits()));
    if (e2.f0 > 2 || e2.f1 >= e2.f1_modulus || e2.f2 >= e2.f2_modulus) throw DecodeFailure("E2 residue out of range");
    return e2;
  }

  // One deletion per interval; interval positions refer to the full codeword.
  Bits decode(BitSpan received, std::span<const Interval> intervals) const {
    const int N = length();
    const int d = static_cast<int>(intervals.size());
    if (d > 2 || static_cast<int>(received.size()) + d != N)
      throw ChannelContractError("E decoder expects one deletion per declared interval");
    for (const auto& iv : intervals)
      if (iv.length < 1 || iv.start < 1 || iv.end() > N) throw ParameterError("interval outside codeword");
    Bits head(received.begin(), received.begin() + std::min<int>(n_, static_cast<int>(received.size())));
    bool touches_payload = false;
    for (const auto& iv : intervals) touches_payload |= iv.start <= n_;
    if (d == 0 || !touches_payload) return head;

    // The summary and its protected sketch sit at fixed offsets up to two positions of slack.
    const int m = summary_bits(), w = xi_bits();
    auto s_sub = received.subspan(n_, m - 2);
    auto rep_sub = received.subspan(n_ + m, 3 * w - 2);
    auto xi = sketch_from_bits(rep3_decode(rep_sub, w), m);
    auto s = xi_decode(s_sub, xi);
    auto e1 = parse_e1(s);
    auto e2 = parse_e2(s);

    std::set<Bits> found;
    for (int mask = 0; mask < (1 << d); ++mask) {  // bit set: that deletion lies in the payload
      std::vector<Interval> inner;
      bool feasible = true;
      for (int k = 0; k < d; ++k) {
        const auto& iv = intervals[k];
        bool in_payload = mask >> k & 1;
        if (in_payload) {
          if (iv.start > n_) feasible = false;
          else inner.push_back({iv.start, std::min(iv.end(), n_) - iv.start + 1});
        } else if (iv.end() <= n_) {
          feasible = false;
        }
      }
      if (!feasible) continue;
      const int dx = static_cast<int>(inner.size());
      auto xr = received.subspan(0, n_ - dx);
      try {
        Bits cand;
        if (dx == 0) cand.assign(xr.begin(), xr.end());
        else if (dx == 1) cand = vt_decode(xr, e2.f1, n_, e2.f1_modulus);
        else {
          std::sort(inner.begin(), inner.end(), [](auto& a, auto& b) { return a.start < b.start; });
          bool separated = inner[1].start > inner[0].end() + 1;
          cand = separated ? e2_decode(xr, inner, e2) : e1_decode(xr, inner, e1);
        }
        if (deletable_within(encode(cand), received, intervals)) found.insert(std::move(cand));
      } catch (const DecodeFailure&) {
      }
    }
    if (found.size() != 1) throw DecodeFailure("E decode found " + std::to_string(found.size()) + " payloads");
    return *found.begin();
  }

 private:
  int n_, P1_, P2_;
  std::uint64_t e1_mod_;
};

// E(z)[1..k] 0 1 E(z)[k+1..]: corrects two deletions in known intervals and one deletion anywhere.
class PrefixCode {
 public:
  PrefixCode(int k, int P1, int P2) : inner_(k, P1, P2) {}

  // The payload length whose codeword has the requested total length.
  static PrefixCode for_length(int n, int P1, int P2) {
    for (int k = 3; k < n; ++k) {
      PrefixCode c(k, P1, P2);
      if (c.length() == n) return c;
      if (c.length() > n) break;
    }
    throw ParameterError("no payload length gives codeword length " + std::to_string(n));
  }

  const ECode& inner() const noexcept { return inner_; }
  int k() const noexcept { return inner_.n(); }
  int length() const { return inner_.length() + 2; }
  int redundancy() const { return length() - k(); }

  Bits encode(BitSpan z) const {
    auto e = inner_.encode(z);
    Bits out(e.begin(), e.begin() + k());
    out.push_back(0);
    out.push_back(1);
    out.insert(out.end(), e.begin() + k(), e.end());
    return out;
  }

  Bits payload(BitSpan codeword) const { return Bits(codeword.begin(), codeword.begin() + k()); }

  // Returns the full codeword.
  Bits decode_two(BitSpan received, std::span<const Interval> intervals) const {
    const int n = length(), k = this->k();
    const int d = static_cast<int>(intervals.size());
    if (d > 2 || static_cast<int>(received.size()) + d != n)
      throw ChannelContractError("prefix decoder expects one deletion per declared interval");
    for (const auto& iv : intervals)
      if (iv.length < 1 || iv.start < 1 || iv.end() > n) throw ParameterError("interval outside codeword");
    if (d == 0) return encode(payload(received));

    std::set<Bits> found;
    int options = 1;
    for (int i = 0; i < d; ++i) options *= 3;
    for (int code = 0; code < options; ++code) {
      // region per deletion: 0 payload, 1 marker, 2 tail
      int c = code, dz = 0, dm = 0;
      std::vector<Interval> inner;
      bool feasible = true;
      for (int i = 0; i < d && feasible; ++i, c /= 3) {
        const auto& iv = intervals[i];
        int region = c % 3;
        int lo = region == 0 ? 1 : region == 1 ? k + 1 : k + 3;
        int hi = region == 0 ? k : region == 1 ? k + 2 : n;
        int a = std::max(lo, iv.start), b = std::min(hi, iv.end());
        if (a > b) {
          feasible = false;
          break;
        }
        if (region == 0) {
          ++dz;
          inner.push_back({a, b - a + 1});
        } else if (region == 1) {
          ++dm;
        } else {
          inner.push_back({a - 2, b - a + 1});
        }
      }
      if (!feasible || dm > 2) continue;
      auto marker = received.subspan(k - dz, 2 - dm);
      if (dm == 0 && !(marker[0] == 0 && marker[1] == 1)) continue;
      Bits er(received.begin(), received.begin() + (k - dz));
      er.insert(er.end(), received.begin() + (k - dz + 2 - dm), received.end());
      std::sort(inner.begin(), inner.end(), [](auto& x, auto& y) { return x.start < y.start; });
      try {
        auto z = inner_.decode(er, inner);
        auto cw = encode(z);
        if (deletable_within(cw, received, intervals)) found.insert(std::move(cw));
      } catch (const DecodeFailure&) {
      }
    }
    if (found.size() != 1) throw DecodeFailure("prefix decode found " + std::to_string(found.size()) + " codewords");
    return *found.begin();
  }

  // One deletion anywhere; returns the full codeword.
  Bits decode_one(BitSpan received) const {
    const int n = length(), k = this->k();
    if (static_cast<int>(received.size()) == n) return encode(payload(received));
    if (static_cast<int>(received.size()) != n - 1) throw ChannelContractError("expected exactly one deletion");
    Bits cw;
    if (received[k] == 0) {
      cw = encode(received.subspan(0, k));
    } else {
      // payload lost a bit; f1 sits in the tail, shifted left by one
      std::size_t off = static_cast<std::size_t>(k + 2 + inner_.e1_bits() + 2 - 1);
      auto f1 = static_cast<long long>(read_field(received, off, inner_.f1_bits()));
      cw = encode(vt_decode(received.subspan(0, k - 1), f1, k, k + 1));
    }
    bool ok = false;
    for (int p = 1; p <= n && !ok; ++p) {
      auto e = erase_positions(cw, {p});
      ok = std::equal(e.begin(), e.end(), received.begin(), received.end());
    }
    if (!ok) throw DecodeFailure("single-deletion decode inconsistent");
    return cw;
  }

 private:
  ECode inner_;
};

}  // namespace syndef::binary
