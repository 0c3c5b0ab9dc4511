#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "syndef/errors.hpp"

namespace syndef {

using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;  // may be empty; used for channel outputs
using Bits = std::vector<std::uint8_t>;
using Schedule = std::vector<int>;

// Shifted modulo onto {1,2,3,4}.
constexpr Symbol wrap4(long long v) noexcept {
  return static_cast<Symbol>(((v - 1) % 4 + 4) % 4 + 1);
}

inline Word parse_word(std::string_view digits) {
  Word w;
  w.reserve(digits.size());
  for (char ch : digits) {
    if (ch < '1' || ch > '4') throw ParameterError("symbol outside 1..4: '" + std::string(1, ch) + "'");
    w.push_back(static_cast<Symbol>(ch - '0'));
  }
  return w;
}

inline Bits parse_bits(std::string_view digits) {
  Bits b;
  b.reserve(digits.size());
  for (char ch : digits) {
    if (ch != '0' && ch != '1') throw ParameterError("bit outside 0..1: '" + std::string(1, ch) + "'");
    b.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return b;
}

// Works for both quaternary words and bit strings.
inline std::string format_digits(std::span<const std::uint8_t> w) {
  std::string s;
  s.reserve(w.size());
  for (auto v : w) s.push_back(static_cast<char>('0' + v));
  return s;
}

class Strand {
 public:
  explicit Strand(Word symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw ParameterError("strand must be nonempty");
    for (auto s : symbols_)
      if (s < 1 || s > 4) throw ParameterError("strand symbol outside 1..4");
  }
  static Strand parse(std::string_view digits) { return Strand(parse_word(digits)); }

  std::size_t size() const noexcept { return symbols_.size(); }
  const Word& word() const noexcept { return symbols_; }
  Symbol operator[](std::size_t i) const { return symbols_.at(i); }
  operator std::span<const Symbol>() const noexcept { return symbols_; }
  std::string str() const { return format_digits(symbols_); }

  auto operator<=>(const Strand&) const = default;
  bool operator==(const Strand&) const = default;

 private:
  Word symbols_;
};

class DefectSet {
 public:
  DefectSet() = default;
  DefectSet(std::initializer_list<int> cycles) : DefectSet(std::vector<int>(cycles)) {}
  explicit DefectSet(std::vector<int> cycles) : cycles_(std::move(cycles)) {
    std::sort(cycles_.begin(), cycles_.end());
    if (std::adjacent_find(cycles_.begin(), cycles_.end()) != cycles_.end())
      throw ParameterError("defect set has repeated cycles");
    if (!cycles_.empty() && cycles_.front() < 1) throw ParameterError("defect cycles start at 1");
  }

  bool contains(int c) const { return std::binary_search(cycles_.begin(), cycles_.end(), c); }
  std::size_t size() const noexcept { return cycles_.size(); }
  bool empty() const noexcept { return cycles_.empty(); }
  const std::vector<int>& cycles() const noexcept { return cycles_; }
  auto begin() const { return cycles_.begin(); }
  auto end() const { return cycles_.end(); }

  // Cycles translated by -a, dropping anything that falls below 1.
  DefectSet unshifted(int a) const {
    std::vector<int> out;
    for (int c : cycles_)
      if (c - a >= 1) out.push_back(c - a);
    return DefectSet(std::move(out));
  }

  auto operator<=>(const DefectSet&) const = default;
  bool operator==(const DefectSet&) const = default;

 private:
  std::vector<int> cycles_;
};

inline Word diff(std::span<const Symbol> x) {
  Word d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = wrap4(static_cast<int>(x[i]) - (i ? x[i - 1] : 0));
  return d;
}

inline Word inverse_diff(std::span<const Symbol> d) {
  Word x(d.size());
  long long acc = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    acc += d[i];
    x[i] = wrap4(acc);
  }
  return x;
}

inline Schedule cycles(std::span<const Symbol> x) {
  Schedule c(x.size());
  int acc = 0;
  Symbol prev = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += wrap4(static_cast<int>(x[i]) - prev);
    prev = x[i];
    c[i] = acc;
  }
  return c;
}

inline Word apply_defects(std::span<const Symbol> x, std::span<const int> schedule, const DefectSet& delta) {
  if (schedule.size() != x.size()) throw ParameterError("schedule length mismatch");
  Word out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!delta.contains(schedule[i])) out.push_back(x[i]);
  return out;
}

inline Word apply_defects(std::span<const Symbol> x, const DefectSet& delta) {
  return apply_defects(x, cycles(x), delta);
}

inline Word insert_symbol(std::span<const Symbol> w, std::size_t pos, Symbol s) {
  Word out(w.begin(), w.end());
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), s);
  return out;
}

// Insertion indices (0-based, before w[p]) at which wrap4(delta) lands on cycle delta.
inline std::vector<std::size_t> insertion_slots(std::span<const Symbol> w, int delta) {
  std::vector<std::size_t> slots;
  if (delta >= 1 && delta <= 4) slots.push_back(0);
  auto c = cycles(w);
  for (std::size_t i = 0; i < c.size() && c[i] <= delta - 1; ++i)
    if (c[i] >= delta - 4) slots.push_back(i + 1);
  return slots;
}

struct Insertion {
  Word word;
  std::vector<std::size_t> positions;  // 0-based indices of the inserted symbols
};

// Sequentially inserts wrap4(d) for each d (ascending) at every slot that puts it on cycle d.
inline std::vector<Insertion> constrained_insertions(std::span<const Symbol> received, std::span<const int> deltas) {
  std::vector<Insertion> cur{{Word(received.begin(), received.end()), {}}};
  for (int d : deltas) {
    std::vector<Insertion> next;
    for (const auto& c : cur)
      for (auto p : insertion_slots(c.word, d)) {
        Insertion ins{insert_symbol(c.word, p, wrap4(d)), c.positions};
        ins.positions.push_back(p);
        next.push_back(std::move(ins));
      }
    cur = std::move(next);
  }
  return cur;
}

inline std::vector<std::vector<int>> subsets_of_size(const std::vector<int>& items, std::size_t k) {
  std::vector<std::vector<int>> out;
  if (k > items.size()) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<int> s;
    for (auto i : idx) s.push_back(items[i]);
    out.push_back(std::move(s));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == items.size() - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// All y of length |x| with the same defect output as x under delta.
inline std::set<Word> confusable_ball(std::span<const Symbol> x, const DefectSet& delta) {
  auto z = apply_defects(x, delta);
  std::size_t k = x.size() - z.size();
  std::set<Word> ball;
  for (const auto& sub : subsets_of_size(delta.cycles(), k))
    for (auto& ins : constrained_insertions(z, sub))
      if (apply_defects(ins.word, delta) == z) ball.insert(std::move(ins.word));
  return ball;
}

inline Bits comparison_bits(std::span<const Symbol> x) {
  Bits s;
  if (x.size() < 2) return s;
  s.reserve(x.size() - 1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) s.push_back(x[i + 1] >= x[i] ? 1 : 0);
  return s;
}

inline Bits signature(std::span<const Symbol> x) {
  if (x.size() < 2) throw ParameterError("signature needs length at least 2");
  return comparison_bits(x);
}

inline std::vector<int> run_sequence(std::span<const std::uint8_t> bits) {
  std::vector<int> r(bits.size());
  int acc = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (i && bits[i] != bits[i - 1]) ++acc;
    r[i] = acc + 1;
  }
  return r;
}

struct SymbolPositions {
  int count = 0;
  std::vector<int> positions;  // 1-based
};

inline SymbolPositions symbol_positions(std::span<const Symbol> x, Symbol sigma) {
  SymbolPositions sp;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] == sigma) {
      ++sp.count;
      sp.positions.push_back(static_cast<int>(i) + 1);
    }
  return sp;
}

inline Word shift_symbols(std::span<const Symbol> x, int a) {
  Word out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = wrap4(static_cast<long long>(x[i]) + a);
  return out;
}

// Admissible shifts keep every shifted cycle inside [1, 4n].
inline std::pair<int, int> shift_range(std::span<const Symbol> x) {
  auto c = cycles(x);
  int n = static_cast<int>(x.size());
  return {1 - c.front(), 4 * n - c.back()};
}

class ShiftedStrand {
 public:
  ShiftedStrand(Strand base, int a) : base_(std::move(base)), shift_(a) {
    auto [lo, hi] = shift_range(base_);
    if (a < lo || a > hi)
      throw RangeError("shift " + std::to_string(a) + " outside [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }
  const Strand& base() const noexcept { return base_; }
  int shift() const noexcept { return shift_; }
  Strand strand() const { return Strand(shift_symbols(base_, shift_)); }
  Schedule schedule() const {
    auto c = cycles(base_);
    for (auto& v : c) v += shift_;
    return c;
  }

 private:
  Strand base_;
  int shift_;
};

inline ShiftedStrand shift(const Strand& x, int a) { return ShiftedStrand(x, a); }

// Every length-`window` substring contains both 00 and 11.  Vacuous when window > |bits|.
inline bool is_regular(std::span<const std::uint8_t> bits, int window) {
  if (window < 4) throw ParameterError("regular window must be at least 4");
  int n = static_cast<int>(bits.size());
  if (window > n) return true;
  int last00 = -1000000, last11 = -1000000;  // end index of most recent pair
  for (int e = 0; e < n; ++e) {
    if (e > 0 && bits[e] == bits[e - 1]) (bits[e] ? last11 : last00) = e;
    if (e >= window - 1) {
      int start = e - window + 1;
      if (last00 - 1 < start || last11 - 1 < start) return false;
    }
  }
  return true;
}

inline int default_regular_window(int n) {
  if (n < 2) throw ParameterError("regular window needs n >= 2");
  return static_cast<int>(std::ceil(7.0 * std::log2(static_cast<double>(n)) - 1e-12));
}

// Fraction of {0,1}^length that is regular for the given window (dynamic programming).
inline double regular_fraction(int length, int window) {
  if (window < 4) throw ParameterError("regular window must be at least 4");
  if (length < window) return 1.0;
  int cap = window;  // distances >= window - 1 are all equally bad
  // state: last bit, distance since last 00 end, distance since last 11 end
  auto idx = [cap](int b, int d0, int d1) { return (b * (cap + 1) + d0) * (cap + 1) + d1; };
  std::vector<double> cur(2 * (cap + 1) * (cap + 1), 0.0), nxt(cur.size());
  cur[idx(0, cap, cap)] = 0.5;
  cur[idx(1, cap, cap)] = 0.5;
  for (int e = 1; e < length; ++e) {
    std::fill(nxt.begin(), nxt.end(), 0.0);
    for (int b = 0; b < 2; ++b)
      for (int d0 = 0; d0 <= cap; ++d0)
        for (int d1 = 0; d1 <= cap; ++d1) {
          double p = cur[idx(b, d0, d1)];
          if (p == 0.0) continue;
          for (int nb = 0; nb < 2; ++nb) {
            int n0 = std::min(cap, d0 + 1), n1 = std::min(cap, d1 + 1);
            if (nb == b) (nb ? n1 : n0) = 0;
            if (e >= window - 1 && (n0 > window - 2 || n1 > window - 2)) continue;
            nxt[idx(nb, n0, n1)] += p * 0.5;
          }
        }
    std::swap(cur, nxt);
  }
  double total = 0.0;
  for (double v : cur) total += v;
  return total;
}

// Strands of equal length.  The first shifts().size() strands are cover strands: physical symbols
// shifted by a_i, with schedule cycles(unshifted) + a_i.  The rest use their plain cycles.
class StrandTuple {
 public:
  explicit StrandTuple(std::vector<Strand> strands, std::vector<int> shifts = {})
      : strands_(std::move(strands)), shifts_(std::move(shifts)) {
    if (strands_.empty()) throw ParameterError("tuple needs at least one strand");
    for (const auto& s : strands_)
      if (s.size() != strands_.front().size()) throw ParameterError("tuple strands differ in length");
    if (shifts_.size() > strands_.size()) throw ParameterError("more shifts than strands");
    for (std::size_t i = 0; i < shifts_.size(); ++i) ShiftedStrand(base(i), shifts_[i]);
  }

  std::size_t n() const noexcept { return strands_.front().size(); }
  std::size_t m() const noexcept { return strands_.size(); }
  std::size_t cover_count() const noexcept { return shifts_.size(); }
  const std::vector<Strand>& strands() const noexcept { return strands_; }
  const std::vector<int>& shifts() const noexcept { return shifts_; }
  const Strand& operator[](std::size_t i) const { return strands_.at(i); }

  // Unshifted strand underlying physical strand i.
  Strand base(std::size_t i) const {
    return i < shifts_.size() ? Strand(shift_symbols(strands_.at(i), -shifts_[i])) : strands_.at(i);
  }

  Schedule schedule(std::size_t i) const {
    if (i >= shifts_.size()) return cycles(strands_.at(i));
    auto c = cycles(base(i));
    for (auto& v : c) v += shifts_[i];
    return c;
  }

  bool operator==(const StrandTuple&) const = default;

 private:
  std::vector<Strand> strands_;
  std::vector<int> shifts_;
};

using ReceivedTuple = std::vector<Word>;

inline ReceivedTuple apply_defects_tuple(const StrandTuple& t, const DefectSet& delta) {
  ReceivedTuple out;
  out.reserve(t.m());
  for (std::size_t i = 0; i < t.m(); ++i) out.push_back(apply_defects(t[i], t.schedule(i), delta));
  return out;
}

inline std::vector<int> cycle_union(const StrandTuple& t) {
  std::set<int> u;
  for (std::size_t i = 0; i < t.m(); ++i)
    for (int c : t.schedule(i)) u.insert(c);
  return {u.begin(), u.end()};
}

// Every received tuple reachable with at most `radius` defects.  Defects outside the union of
// schedules change nothing, so only cycles inside it are enumerated.
inline std::set<ReceivedTuple> defect_ball(const StrandTuple& t, int radius) {
  auto u = cycle_union(t);
  std::set<ReceivedTuple> ball;
  for (int r = 0; r <= radius; ++r)
    for (auto& sub : subsets_of_size(u, static_cast<std::size_t>(r)))
      ball.insert(apply_defects_tuple(t, DefectSet(std::move(sub))));
  return ball;
}

}  // namespace syndef
