#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "syndef/array_code.hpp"
#include "syndef/binary.hpp"
#include "syndef/core.hpp"

namespace syndef::kdcc {

using binary::Interval;

enum class Family { sum1, svt1, array2 };

constexpr int kSvtWindow = 5;
constexpr int kArrayRows = 9;

inline std::string to_string(Family f) {
  switch (f) {
    case Family::sum1: return "sum1";
    case Family::svt1: return "svt1";
    case Family::array2: return "array2";
  }
  return "?";
}

inline Family family_from_string(const std::string& s) {
  if (s == "sum1") return Family::sum1;
  if (s == "svt1") return Family::svt1;
  if (s == "array2") return Family::array2;
  throw ParameterError("unknown KDCC family '" + s + "'");
}

inline int defects_corrected(Family f) { return f == Family::array2 ? 2 : 1; }

// sum1: a in Z4.  svt1: a in Z5, b in Z2.  array2: row sums in Z3^9, weighted in Z_{3^9 n}.
struct Spec {
  Family family = Family::sum1;
  int n = 1;
  long long a = 0;
  int b = 0;
  std::vector<int> row_sums;
  long long weighted = 0;

  auto operator<=>(const Spec&) const = default;
  bool operator==(const Spec&) const = default;
};

inline long long array2_modulus(int n) { return binary::pow3(kArrayRows) * n; }

inline void validate(const Spec& s) {
  if (s.n < 1) throw ParameterError("n must be positive");
  switch (s.family) {
    case Family::sum1:
      if (s.a < 0 || s.a > 3) throw ParameterError("sum1 residue a must lie in Z4");
      break;
    case Family::svt1:
      if (s.n < 3) throw ParameterError("svt1 needs n >= 3");
      if (s.a < 0 || s.a >= kSvtWindow || s.b < 0 || s.b > 1) throw ParameterError("svt1 residues outside Z5 x Z2");
      break;
    case Family::array2:
      if (s.n < 3) throw ParameterError("array2 needs n >= 3");
      if (static_cast<int>(s.row_sums.size()) != kArrayRows) throw ParameterError("array2 needs 9 row sums");
      for (int r : s.row_sums)
        if (r < 0 || r > 2) throw ParameterError("array2 row sums must lie in Z3");
      if (s.weighted < 0 || s.weighted >= array2_modulus(s.n)) throw ParameterError("array2 weighted residue out of range");
      break;
  }
}

inline long long even_position_sum(std::span<const Symbol> x) {
  long long s = 0;
  for (std::size_t i = 1; i < x.size(); i += 2) s += x[i];
  return s;
}

inline binary::SvtParams svt_params(const Spec& s) { return {s.a, s.b, kSvtWindow}; }

inline binary::ArrayCodeParams array_params(const Spec& s) {
  return {kArrayRows, s.n - 1, s.row_sums, s.weighted, array2_modulus(s.n)};
}

// The residues of the class containing x.
inline Spec residues_of(std::span<const Symbol> x, Family f) {
  Spec s;
  s.family = f;
  s.n = static_cast<int>(x.size());
  switch (f) {
    case Family::sum1:
      s.a = even_position_sum(x) % 4;
      break;
    case Family::svt1: {
      auto p = binary::svt_params(signature(x), kSvtWindow);
      s.a = p.a;
      s.b = p.b;
      break;
    }
    case Family::array2: {
      auto p = binary::array_syndromes(signature(x), kArrayRows, s.n);
      s.row_sums = p.row_sums;
      s.weighted = p.weighted;
      break;
    }
  }
  return s;
}

inline bool membership(const Spec& s, std::span<const Symbol> x) {
  if (static_cast<int>(x.size()) != s.n) return false;
  return residues_of(x, s.family) == s;
}

struct Instance {
  Word received;
  DefectSet delta;
  int n = 0;
};

// Inserts wrap4(d) for each d in ascending order, using the signature to prune slots.
inline Word recover_from_signature(std::span<const Symbol> received, std::span<const int> deltas, std::span<const std::uint8_t> sig) {
  const std::size_t n = received.size() + deltas.size();
  if (sig.size() + 1 != n && !(n < 2 && sig.empty())) throw ParameterError("signature length mismatch");
  std::vector<Word> cur{Word(received.begin(), received.end())};
  for (int d : deltas) {
    std::vector<Word> next;
    for (const auto& w : cur)
      for (auto p : insertion_slots(w, d)) {
        auto y = insert_symbol(w, p, wrap4(d));
        if (p > 0 && static_cast<std::uint8_t>(y[p] >= y[p - 1]) != sig[p - 1]) continue;
        next.push_back(std::move(y));
      }
    cur = std::move(next);
  }
  std::set<Word> found;
  DefectSet delta(std::vector<int>(deltas.begin(), deltas.end()));
  for (auto& y : cur) {
    auto s = comparison_bits(y);
    if (!std::equal(s.begin(), s.end(), sig.begin(), sig.end())) continue;
    if (apply_defects(y, delta) != Word(received.begin(), received.end())) continue;
    found.insert(std::move(y));
  }
  if (found.empty()) throw DecodeFailure("no slot is consistent with the signature");
  if (found.size() > 1) throw DecodeFailure("signature leaves several reconstructions");
  return *found.begin();
}

// Signature windows (1-based, clipped to [1, n-1]) that contain the deleted signature bits for
// every candidate in the confusable ball.
inline std::vector<Interval> signature_windows(std::span<const Symbol> received, std::span<const int> deltas,
                                               const DefectSet& full, int n) {
  std::vector<int> lo(deltas.size(), 1 << 30), hi(deltas.size(), -1);
  bool any = false;
  for (const auto& ins : constrained_insertions(received, deltas)) {
    if (apply_defects(ins.word, full) != Word(received.begin(), received.end())) continue;
    any = true;
    for (std::size_t k = 0; k < deltas.size(); ++k) {
      int j = static_cast<int>(ins.positions[k]) + 1;
      lo[k] = std::min(lo[k], j - 1);
      hi[k] = std::max(hi[k], j);
    }
  }
  std::vector<Interval> out;
  if (!any) return out;
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    int a = std::max(1, lo[k]), b = std::min(n - 1, hi[k]);
    out.push_back({a, b - a + 1});
  }
  return out;
}

inline int deletion_count(const Instance& in, std::size_t t) {
  int k = in.n - static_cast<int>(in.received.size());
  if (k < 0 || k > static_cast<int>(std::min(t, in.delta.size())))
    throw ChannelContractError("received length inconsistent with the defect set");
  return k;
}

inline Word decode_sum1(const Instance& in, long long a) {
  if (in.delta.size() != 1) throw ParameterError("sum1 corrects exactly one known defect");
  if (deletion_count(in, 1) == 0) return in.received;
  int d = in.delta.cycles().front();
  std::set<Word> found;
  for (auto p : insertion_slots(in.received, d)) {
    auto y = insert_symbol(in.received, p, wrap4(d));
    if (apply_defects(y, in.delta) == in.received && even_position_sum(y) % 4 == a) found.insert(std::move(y));
  }
  if (found.size() != 1) throw DecodeFailure("sum1 decode found " + std::to_string(found.size()) + " strands");
  return *found.begin();
}

inline Word decode_svt1(const Instance& in, long long a, int b) {
  if (in.delta.size() != 1) throw ParameterError("svt1 corrects exactly one known defect");
  if (in.n < 3) throw ParameterError("svt1 needs n >= 3");
  if (deletion_count(in, 1) == 0) return in.received;
  std::vector<int> d{in.delta.cycles().front()};
  auto w = signature_windows(in.received, d, in.delta, in.n);
  if (w.empty()) throw DecodeFailure("defect cannot be placed in the received strand");
  if (w[0].length > kSvtWindow) throw DecodeFailure("signature window wider than the SVT window");
  auto sig = binary::svt_decode(comparison_bits(in.received), w[0].start, {a, b, kSvtWindow});
  return recover_from_signature(in.received, d, sig);
}

inline Word decode_array2(const Instance& in, const Spec& s) {
  if (in.delta.size() != 2) throw ParameterError("array2 corrects exactly two known defects");
  const int k = deletion_count(in, 2);
  if (k == 0) return in.received;
  auto params = array_params(s);
  auto sig_received = comparison_bits(in.received);
  std::set<Word> found;
  for (const auto& sub : subsets_of_size(in.delta.cycles(), static_cast<std::size_t>(k))) {
    auto w = signature_windows(in.received, sub, in.delta, in.n);
    if (w.empty()) continue;
    try {
      auto sig = binary::array_bounded_decode(sig_received, w, params);
      auto x = recover_from_signature(in.received, sub, sig);
      if (membership(s, x) && apply_defects(x, in.delta) == in.received) found.insert(std::move(x));
    } catch (const DecodeFailure&) {
    }
  }
  if (found.size() != 1) throw DecodeFailure("array2 decode found " + std::to_string(found.size()) + " strands");
  return *found.begin();
}

inline Word decode(const Instance& in, const Spec& s) {
  validate(s);
  if (in.n != s.n) throw ParameterError("instance length differs from the code length");
  switch (s.family) {
    case Family::sum1: return decode_sum1(in, s.a);
    case Family::svt1: return decode_svt1(in, s.a, s.b);
    case Family::array2: return decode_array2(in, s);
  }
  throw ParameterError("unknown family");
}

inline std::vector<Word> enumerate_words(int n) {
  if (n < 1 || n > 12) throw ParameterError("exhaustive enumeration supports 1 <= n <= 12");
  std::vector<Word> out;
  Word w(n, 1);
  while (true) {
    out.push_back(w);
    int i = n - 1;
    while (i >= 0 && w[i] == 4) w[i--] = 1;
    if (i < 0) break;
    ++w[i];
  }
  return out;
}

struct ResidueChoice {
  Spec spec;
  long long size = 0;
};

// Largest residue class by exhaustive count; ties go to the smallest residues.
inline ResidueChoice best_residues(Family f, int n) {
  std::map<Spec, long long> counts;
  for (const auto& x : enumerate_words(n)) ++counts[residues_of(x, f)];
  ResidueChoice best;
  for (const auto& [spec, c] : counts)
    if (c > best.size) best = {spec, c};
  return best;
}

inline std::vector<Word> codebook(const Spec& s) {
  validate(s);
  std::vector<Word> out;
  for (auto& x : enumerate_words(s.n))
    if (membership(s, x)) out.push_back(std::move(x));
  return out;
}

}  // namespace syndef::kdcc
