#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "syndef/binary.hpp"
#include "syndef/c2d.hpp"
#include "syndef/core.hpp"
#include "syndef/cover.hpp"
#include "syndef/rng.hpp"
#include "syndef/sketch_code.hpp"

namespace syndef::sdcc {

using binary::Interval;

// Cycle interval [lo, hi].
using CycleWindow = std::pair<int, int>;

// ---------------------------------------------------------------------------------------------
// Shared machinery

inline std::vector<int> shortfalls(const ReceivedTuple& r, int n, int max_t) {
  std::vector<int> k;
  for (const auto& w : r) {
    int d = n - static_cast<int>(w.size());
    if (d < 0 || d > max_t) throw ChannelContractError("strand length outside the defect budget");
    k.push_back(d);
  }
  return k;
}

// Cycles (ascending) whose deletion from the physical strand c gives r.
inline std::vector<std::vector<int>> deletion_explanations(const Word& c, const Schedule& sched, const Word& r) {
  const int n = static_cast<int>(c.size());
  const int k = n - static_cast<int>(r.size());
  std::vector<std::vector<int>> out;
  if (k == 0) {
    if (c == r) out.push_back({});
    return out;
  }
  auto matches = [&](int skip1, int skip2) {
    int j = 0;
    for (int i = 0; i < n; ++i) {
      if (i == skip1 || i == skip2) continue;
      if (c[i] != r[j++]) return false;
    }
    return true;
  };
  for (int i = 0; i < n; ++i) {
    if (k == 1) {
      if (matches(i, -1)) out.push_back({sched[i]});
      continue;
    }
    for (int j = i + 1; j < n; ++j)
      if (matches(i, j)) out.push_back({sched[i], sched[j]});
  }
  return out;
}

// Defect sets of size <= max_t consistent with every recovered cover strand.
inline std::vector<DefectSet> feasible_defects(const std::vector<Word>& cover, const std::vector<Schedule>& sched,
                                               const ReceivedTuple& received, int max_t) {
  std::set<int> pool;
  for (std::size_t i = 0; i < cover.size(); ++i)
    for (const auto& e : deletion_explanations(cover[i], sched[i], received[i])) pool.insert(e.begin(), e.end());
  std::vector<int> items(pool.begin(), pool.end());
  std::vector<DefectSet> out;
  for (int t = 0; t <= max_t; ++t)
    for (auto& sub : subsets_of_size(items, static_cast<std::size_t>(t))) {
      DefectSet d(sub);
      bool ok = true;
      for (std::size_t i = 0; i < cover.size() && ok; ++i) ok = apply_defects(cover[i], sched[i], d) == received[i];
      if (ok) out.push_back(std::move(d));
    }
  return out;
}

// Cycle hull of the k-th smallest defect across hypotheses of the largest size.
inline std::vector<CycleWindow> defect_windows(const std::vector<DefectSet>& F) {
  std::vector<CycleWindow> w;
  for (const auto& d : F) {
    auto c = d.cycles();
    if (c.size() > w.size()) w.assign(c.size(), {1 << 30, -1});
    if (c.size() < w.size()) continue;
    for (std::size_t k = 0; k < c.size(); ++k) w[k] = {std::min(w[k].first, c[k]), std::max(w[k].second, c[k])};
  }
  return w;
}

// Strands y (plain schedule) with apply_defects(y, D) == r for some hypothesis D, passing `accept`.
template <class Accept>
std::set<Word> reinsertions(const Word& r, int n, const std::vector<DefectSet>& F, Accept&& accept) {
  const std::size_t k = static_cast<std::size_t>(n) - r.size();
  std::set<Word> out;
  for (const auto& d : F)
    for (const auto& sub : subsets_of_size(d.cycles(), k))
      for (auto& ins : constrained_insertions(r, sub))
        if (apply_defects(ins.word, d) == r && accept(ins.word, d)) out.insert(std::move(ins.word));
  return out;
}

// Signature intervals (1-based, inside [1, n-1]) for the deleted symbols ranked by position.
inline std::vector<Interval> located_signature_windows(const Word& r, int n, const std::vector<DefectSet>& F) {
  const std::size_t k = static_cast<std::size_t>(n) - r.size();
  std::vector<int> lo(k, 1 << 30), hi(k, -1);
  reinsertions(r, n, F, [&](const Word& y, const DefectSet& d) {
    auto c = cycles(y);
    std::vector<int> pos;
    for (int j = 0; j < n; ++j)
      if (d.contains(c[j])) pos.push_back(j + 1);
    if (pos.size() != k) return false;
    for (std::size_t q = 0; q < k; ++q) {
      lo[q] = std::min(lo[q], std::max(1, pos[q] - 1));
      hi[q] = std::max(hi[q], std::min(n - 1, pos[q]));
    }
    return false;
  });
  std::vector<Interval> out;
  for (std::size_t q = 0; q < k; ++q) {
    if (hi[q] < 0) return {};
    out.push_back({lo[q], hi[q] - lo[q] + 1});
  }
  return out;
}

inline Word unique_or_throw(const std::set<Word>& s, const std::string& what) {
  if (s.size() != 1) throw DecodeFailure(what + " found " + std::to_string(s.size()) + " strands");
  return *s.begin();
}

inline int symbol_sum(std::span<const Symbol> x) {
  int s = 0;
  for (auto v : x) s += v;
  return s;
}

// Bases for the cover strands.  With one strand per block the only covering strands are the
// consecutive-cycle ones; otherwise random strands with regular signatures are drawn until the
// greedy plan covers.
inline std::vector<Word> cover_bases(int n, int m1, Rng& rng, int regular_window, int tries = 2000) {
  std::vector<Word> bases;
  if (m1 == 1) {
    for (int i = 0; i < 4; ++i) {
      auto w = template_strand(n, static_cast<int>(rng.below(4)) + 1);
      if (!is_regular(comparison_bits(w), regular_window))
        throw ParameterError("consecutive cover strands are not regular for this window");
      bases.push_back(std::move(w));
    }
    return bases;
  }
  for (int attempt = 0; attempt < tries; ++attempt) {
    bases.clear();
    for (int i = 0; i < 4 * m1; ++i) {
      Word w;
      int guard = 0;
      do w = rng.word(n);
      while (!is_regular(comparison_bits(w), regular_window) && ++guard < tries);
      if (guard >= tries) throw ParameterError("could not draw a regular strand");
      bases.push_back(std::move(w));
    }
    try {
      select_cover_shifts(bases, m1);
      return bases;
    } catch (const ConstructionError&) {
    }
  }
  throw ParameterError("no covering strand set found");
}

inline StrandTuple assemble(const std::vector<Word>& bases, const std::vector<int>& shifts, std::vector<Word> rest) {
  std::vector<Strand> s;
  for (std::size_t i = 0; i < bases.size(); ++i) s.emplace_back(shift_symbols(bases[i], shifts[i]));
  for (auto& w : rest) s.emplace_back(std::move(w));
  return StrandTuple(std::move(s), shifts);
}

inline bool plan_matches(const StrandTuple& t, int m1) {
  if (t.cover_count() != static_cast<std::size_t>(4 * m1)) return false;
  std::vector<Word> bases;
  for (std::size_t i = 0; i < t.cover_count(); ++i) bases.push_back(t.base(i).word());
  try {
    return select_cover_shifts(bases, m1).shifts == t.shifts();
  } catch (const ConstructionError&) {
    return false;
  }
}

struct TupleShape {
  int n = 0;
  int m = 0;
  int m1 = 1;
  int window = 0;          // P; 0 selects ceil(28 log2 n) + 5
  int regular_window = 0;  // 0 selects ceil(7 log2 n)

  bool operator==(const TupleShape&) const = default;
};

inline TupleShape resolved(TupleShape s) {
  if (s.n < 3) throw ParameterError("SDCC needs n >= 3");
  if (s.m1 < 1 || s.m <= 4 * s.m1) throw ParameterError("SDCC needs M > 4 M1 >= 4");
  if (!s.window) s.window = formula_window(s.n);
  if (!s.regular_window) s.regular_window = default_regular_window(s.n);
  return s;
}

// ---------------------------------------------------------------------------------------------
// Single defect

struct Sdcc1Params {
  TupleShape shape;
  std::vector<int> s;        // symbol sums mod 4 of cover bases
  std::vector<long long> b;  // VT of cover signatures mod n
  std::vector<long long> d;  // SVT residues of remaining signatures, window P + 1
  std::vector<int> e;
  bool operator==(const Sdcc1Params&) const = default;
};

inline binary::SvtParams sdcc1_svt(const Sdcc1Params& p, std::size_t j) {
  return {p.d[j], p.e[j], p.shape.window + 1};
}

inline Sdcc1Params sdcc1_params_of(const StrandTuple& t, TupleShape shape) {
  shape = resolved(shape);
  if (static_cast<int>(t.n()) != shape.n || static_cast<int>(t.m()) != shape.m) throw ParameterError("tuple shape mismatch");
  if (t.cover_count() != static_cast<std::size_t>(4 * shape.m1)) throw ParameterError("tuple needs 4 M1 shifts");
  Sdcc1Params p{shape, {}, {}, {}, {}};
  for (std::size_t i = 0; i < t.m(); ++i) {
    if (i < t.cover_count()) {
      auto x = t.base(i).word();
      p.s.push_back(symbol_sum(x) % 4);
      p.b.push_back(binary::vt_syndrome(comparison_bits(x)) % shape.n);
    } else {
      auto sv = binary::svt_params(comparison_bits(t[i].word()), shape.window + 1);
      p.d.push_back(sv.a);
      p.e.push_back(sv.b);
    }
  }
  return p;
}

inline bool sdcc1_membership(const StrandTuple& t, const Sdcc1Params& p) {
  const auto& sh = p.shape;
  if (static_cast<int>(t.n()) != sh.n || static_cast<int>(t.m()) != sh.m || !plan_matches(t, sh.m1)) return false;
  for (std::size_t i = 0; i < t.cover_count(); ++i)
    if (!is_regular(comparison_bits(t.base(i).word()), sh.regular_window)) return false;
  return sdcc1_params_of(t, sh) == p;
}

struct SdccDecode {
  StrandTuple tuple;
  std::vector<DefectSet> hypotheses;  // defect sets consistent with the cover strands
  std::vector<CycleWindow> windows;   // per defect rank
};

// Cover strand i from one deletion: signature by VT, lost symbol by the sum mod 4, position by the
// signature.
inline Word sdcc1_cover_strand(const Word& received_base, long long s, long long b, int n) {
  auto sig = binary::vt_decode(comparison_bits(received_base), b, n - 1, n);
  Symbol v = wrap4(s - symbol_sum(received_base));
  std::set<Word> found;
  for (int i = 0; i < n; ++i) {
    auto y = insert_symbol(received_base, i, v);
    if (comparison_bits(y) == sig) found.insert(std::move(y));
  }
  return unique_or_throw(found, "cover strand reconstruction");
}

inline SdccDecode sdcc1_decode(const ReceivedTuple& received, const std::vector<int>& shifts, const Sdcc1Params& p) {
  const auto& sh = p.shape;
  const int n = sh.n;
  if (static_cast<int>(received.size()) != sh.m) throw ParameterError("received tuple has the wrong strand count");
  if (shifts.size() != static_cast<std::size_t>(4 * sh.m1)) throw ParameterError("tuple needs 4 M1 shifts");
  auto k = shortfalls(received, n, 1);
  const std::size_t nc = shifts.size();

  std::vector<Word> cover;
  std::vector<Schedule> sched;
  for (std::size_t i = 0; i < nc; ++i) {
    auto base = shift_symbols(received[i], -shifts[i]);
    if (k[i]) base = sdcc1_cover_strand(base, p.s[i], p.b[i], n);
    auto c = cycles(base);
    for (auto& v : c) v += shifts[i];
    sched.push_back(std::move(c));
    cover.push_back(shift_symbols(base, shifts[i]));
  }
  auto F = feasible_defects(cover, sched, ReceivedTuple(received.begin(), received.begin() + nc), 1);
  if (F.empty()) throw DecodeFailure("no defect is consistent with the cover strands");
  bool hit = std::any_of(F.begin(), F.end(), [](const DefectSet& d) { return d.size() > 0; });
  if (!hit && std::any_of(k.begin() + nc, k.end(), [](int v) { return v > 0; }))
    throw ChannelContractError("a remaining strand is short although no cover strand is");

  std::vector<Strand> out;
  for (auto& c : cover) out.emplace_back(std::move(c));
  for (std::size_t i = nc; i < received.size(); ++i) {
    if (!k[i]) {
      out.emplace_back(received[i]);
      continue;
    }
    auto w = located_signature_windows(received[i], n, F);
    if (w.empty()) throw DecodeFailure("defect cannot be placed in a remaining strand");
    if (w[0].length > sh.window + 1) throw DecodeFailure("located window wider than the SVT window");
    auto sig = binary::svt_decode(comparison_bits(received[i]), w[0].start, sdcc1_svt(p, i - nc));
    auto ys = reinsertions(received[i], n, F, [&](const Word& y, const DefectSet&) { return comparison_bits(y) == sig; });
    out.emplace_back(unique_or_throw(ys, "remaining strand reconstruction"));
  }
  return {StrandTuple(std::move(out), shifts), F, hit ? defect_windows(F) : std::vector<CycleWindow>{}};
}

inline std::pair<StrandTuple, Sdcc1Params> sdcc1_witness(TupleShape shape, Rng& rng) {
  shape = resolved(shape);
  auto bases = cover_bases(shape.n, shape.m1, rng, shape.regular_window);
  auto plan = select_cover_shifts(bases, shape.m1);
  std::vector<Word> rest;
  for (int i = 4 * shape.m1; i < shape.m; ++i) rest.push_back(rng.word(shape.n));
  auto t = assemble(bases, plan.shifts, std::move(rest));
  return {t, sdcc1_params_of(t, shape)};
}

// ---------------------------------------------------------------------------------------------
// Two defects

// Residues of a remaining strand: E1/E2 of its signature plus symbol position sums.
struct TailParams {
  binary::E1Sketch e1;
  binary::E2Sketch e2;
  std::array<long long, 4> position_sums{};
  bool operator==(const TailParams&) const = default;
};

struct Sdcc2Params {
  TupleShape shape;
  std::vector<C2dParams> cover;
  std::vector<TailParams> remaining;
  bool operator==(const Sdcc2Params&) const = default;
};

inline TailParams tail_params_of(const Word& x, int window) {
  const int n = static_cast<int>(x.size());
  auto sig = comparison_bits(x);
  return {binary::e1_sketch(sig, window, window), binary::e2_sketch(sig, window, window),
          position_sums(x, position_modulus(n))};
}

inline Sdcc2Params sdcc2_params_of(const StrandTuple& t, TupleShape shape) {
  shape = resolved(shape);
  if (static_cast<int>(t.n()) != shape.n || static_cast<int>(t.m()) != shape.m) throw ParameterError("tuple shape mismatch");
  if (t.cover_count() != static_cast<std::size_t>(4 * shape.m1)) throw ParameterError("tuple needs 4 M1 shifts");
  Sdcc2Params p{shape, {}, {}};
  for (std::size_t i = 0; i < t.m(); ++i) {
    if (i < t.cover_count()) p.cover.push_back(c2d_params_of(t.base(i).word(), shape.regular_window));
    else p.remaining.push_back(tail_params_of(t[i].word(), shape.window));
  }
  return p;
}

inline bool sdcc2_membership(const StrandTuple& t, const Sdcc2Params& p) {
  const auto& sh = p.shape;
  if (static_cast<int>(t.n()) != sh.n || static_cast<int>(t.m()) != sh.m || !plan_matches(t, sh.m1)) return false;
  for (std::size_t i = 0; i < t.cover_count(); ++i)
    if (!c2d_membership(t.base(i).word(), p.cover[i])) return false;
  return sdcc2_params_of(t, sh) == p;
}

// Signature of a remaining strand: VT residue for one deletion, E1/E2 inside the located windows
// for two.
inline Bits sdcc2_tail_signature(const Word& r, int n, const std::vector<DefectSet>& F, const TailParams& tp, int P) {
  const int k = n - static_cast<int>(r.size());
  auto sr = comparison_bits(r);
  if (k == 1) return binary::vt_decode(sr, tp.e2.f1, n - 1, tp.e2.f1_modulus);
  auto w = located_signature_windows(r, n, F);
  if (w.size() != 2) throw DecodeFailure("defects cannot be placed in a remaining strand");
  std::sort(w.begin(), w.end(), [](const Interval& a, const Interval& b) { return a.start < b.start; });
  for (const auto& iv : w)
    if (iv.length > P) throw DecodeFailure("located window wider than P");
  bool separated = w[1].start > w[0].end() + 1;
  return separated ? binary::e2_decode(sr, w, tp.e2) : binary::e1_decode(sr, w, tp.e1);
}

inline SdccDecode sdcc2_decode(const ReceivedTuple& received, const std::vector<int>& shifts, const Sdcc2Params& p) {
  const auto& sh = p.shape;
  const int n = sh.n;
  if (static_cast<int>(received.size()) != sh.m) throw ParameterError("received tuple has the wrong strand count");
  if (shifts.size() != static_cast<std::size_t>(4 * sh.m1)) throw ParameterError("tuple needs 4 M1 shifts");
  auto k = shortfalls(received, n, 2);
  const std::size_t nc = shifts.size();

  std::vector<Word> cover;
  std::vector<Schedule> sched;
  for (std::size_t i = 0; i < nc; ++i) {
    auto base = c2d_decode(shift_symbols(received[i], -shifts[i]), p.cover[i]).word;
    auto c = cycles(base);
    for (auto& v : c) v += shifts[i];
    sched.push_back(std::move(c));
    cover.push_back(shift_symbols(base, shifts[i]));
  }
  auto F = feasible_defects(cover, sched, ReceivedTuple(received.begin(), received.begin() + nc), 2);
  if (F.empty()) throw DecodeFailure("no defect set is consistent with the cover strands");
  std::size_t t = 0;
  for (const auto& d : F) t = std::max(t, d.size());
  for (std::size_t i = nc; i < received.size(); ++i)
    if (static_cast<std::size_t>(k[i]) > t) throw ChannelContractError("a remaining strand lost more symbols than defects occurred");

  std::vector<Strand> out;
  for (auto& c : cover) out.emplace_back(std::move(c));
  for (std::size_t i = nc; i < received.size(); ++i) {
    if (!k[i]) {
      out.emplace_back(received[i]);
      continue;
    }
    const auto& tp = p.remaining[i - nc];
    auto sig = sdcc2_tail_signature(received[i], n, F, tp, sh.window);
    const int pm = position_modulus(n);
    auto ys = reinsertions(received[i], n, F, [&](const Word& y, const DefectSet&) {
      return comparison_bits(y) == sig && position_sums(y, pm) == tp.position_sums;
    });
    out.emplace_back(unique_or_throw(ys, "remaining strand reconstruction"));
  }
  return {StrandTuple(std::move(out), shifts), F, t ? defect_windows(F) : std::vector<CycleWindow>{}};
}

inline std::pair<StrandTuple, Sdcc2Params> sdcc2_witness(TupleShape shape, Rng& rng) {
  shape = resolved(shape);
  auto bases = cover_bases(shape.n, shape.m1, rng, shape.regular_window);
  auto plan = select_cover_shifts(bases, shape.m1);
  std::vector<Word> rest;
  for (int i = 4 * shape.m1; i < shape.m; ++i) rest.push_back(rng.word(shape.n));
  auto t = assemble(bases, plan.shifts, std::move(rest));
  return {t, sdcc2_params_of(t, shape)};
}

// ---------------------------------------------------------------------------------------------
// Toy-scale class enumeration and ball disjointness

// Every tuple whose slot i passes slot_ok(i, base) (cover slots get base strands that admit
// shifts[i]) and that passes `member`.  Exhaustive in Sigma^n per slot, so only for tiny n.
template <class SlotOk, class Member>
std::vector<StrandTuple> member_tuples(int n, int m, const std::vector<int>& shifts, SlotOk&& slot_ok, Member&& member) {
  if (n > 8) throw ParameterError("tuple class enumeration limited to n <= 8");
  std::vector<Word> all;
  {
    Word w(n, 1);
    while (true) {
      all.push_back(w);
      int i = n - 1;
      while (i >= 0 && w[i] == 4) w[i--] = 1;
      if (i < 0) break;
      ++w[i];
    }
  }
  std::vector<std::vector<Word>> slots(m);
  for (int i = 0; i < m; ++i)
    for (const auto& w : all) {
      if (i < static_cast<int>(shifts.size())) {
        auto [lo, hi] = shift_range(w);
        if (shifts[i] < lo || shifts[i] > hi) continue;
      }
      if (slot_ok(i, w)) slots[i].push_back(w);
    }
  // Depth-first over slots; a cover block is pruned as soon as its greedy shifts disagree or
  // it leaves a cycle of the block uncovered.
  const int nc = static_cast<int>(shifts.size());
  const int m1 = nc / 4;
  std::vector<StrandTuple> out;
  std::vector<Word> pick(m);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == m) {
      std::vector<Word> bases(pick.begin(), pick.begin() + nc), rest(pick.begin() + nc, pick.end());
      auto t = assemble(bases, shifts, rest);
      if (member(t)) out.push_back(std::move(t));
      return;
    }
    for (const auto& w : slots[i]) {
      pick[i] = w;
      if (m1 && i < nc && (i + 1) % m1 == 0) {
        int b = i / m1;
        auto bp = greedy_block(std::span<const Word>(pick).subspan(b * m1, m1), b * n + 1);
        if (bp.uncovered.back() != 0 || !std::equal(bp.shifts.begin(), bp.shifts.end(), shifts.begin() + b * m1)) continue;
      }
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

struct BallCheck {
  std::size_t codewords = 0;
  std::size_t outputs = 0;
  bool disjoint = true;
  std::string witness;
};

// Pairwise disjointness of the radius-t defect balls, by direct intersection.
inline BallCheck balls_disjoint(const std::vector<StrandTuple>& code, int radius) {
  auto key = [](const ReceivedTuple& r) {
    std::string k;
    for (const auto& w : r) k += format_digits(w) + '|';
    return k;
  };
  std::map<std::string, std::size_t> owner;
  BallCheck c;
  c.codewords = code.size();
  for (std::size_t i = 0; i < code.size(); ++i)
    for (const auto& r : defect_ball(code[i], radius)) {
      auto [it, fresh] = owner.emplace(key(r), i);
      if (!fresh && it->second != i) {
        c.disjoint = false;
        c.witness = key(r);
        return c;
      }
      c.outputs += fresh;
    }
  return c;
}

inline std::vector<StrandTuple> sdcc1_class(const std::vector<int>& shifts, const Sdcc1Params& p) {
  const auto& sh = p.shape;
  const int nc = static_cast<int>(shifts.size());
  return member_tuples(
      sh.n, sh.m, shifts,
      [&](int i, const Word& w) {
        auto sig = comparison_bits(w);
        if (i < nc)
          return symbol_sum(w) % 4 == p.s[i] && binary::vt_syndrome(sig) % sh.n == p.b[i] &&
                 is_regular(sig, sh.regular_window);
        return binary::svt_member(sig, sdcc1_svt(p, i - nc));
      },
      [&](const StrandTuple& t) { return sdcc1_membership(t, p); });
}

inline std::vector<StrandTuple> sdcc2_class(const std::vector<int>& shifts, const Sdcc2Params& p) {
  const auto& sh = p.shape;
  const int nc = static_cast<int>(shifts.size());
  return member_tuples(
      sh.n, sh.m, shifts,
      [&](int i, const Word& w) {
        if (i < nc) return c2d_membership(w, p.cover[i]);
        return tail_params_of(w, sh.window) == p.remaining[i - nc];
      },
      [&](const StrandTuple& t) { return sdcc2_membership(t, p); });
}

}  // namespace syndef::sdcc
