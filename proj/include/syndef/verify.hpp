#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "syndef/array_code.hpp"
#include "syndef/bounds.hpp"
#include "syndef/c2d.hpp"
#include "syndef/core.hpp"
#include "syndef/cover.hpp"
#include "syndef/io.hpp"
#include "syndef/kdcc.hpp"
#include "syndef/rng.hpp"
#include "syndef/sdcc.hpp"
#include "syndef/sketch_code.hpp"

// Verification drivers shared by the CLI and the acceptance runner.  Each returns a Check whose
// counterexample is the first failing instance, serialized in full.
namespace syndef::verify {

using io::json;

struct Check {
  std::string name;
  json params = json::object();
  json metrics = json::object();
  bool pass = true;
  json counterexample = nullptr;

  void fail(json witness) {
    if (pass) counterexample = std::move(witness);
    pass = false;
  }
};

inline json row(const Check& c) {
  return json{{"check", c.name}, {"params", c.params}, {"metrics", c.metrics}, {"pass", c.pass},
              {"counterexample", c.counterexample}};
}

inline std::vector<Word> all_words(int n) { return kdcc::enumerate_words(n); }

inline std::vector<Bits> all_bits(int n) {
  std::vector<Bits> out;
  for (long long m = 0; m < (1LL << n); ++m) {
    Bits b(n);
    for (int i = 0; i < n; ++i) b[i] = static_cast<std::uint8_t>(m >> (n - 1 - i) & 1);
    out.push_back(std::move(b));
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Channel model

inline Check channel_model(int max_n) {
  Check c{"channel_model"};
  c.params = {{"max_n", max_n}};
  long long words = 0;
  for (int n = 1; n <= max_n; ++n)
    for (const auto& x : all_words(n)) {
      ++words;
      auto cy = cycles(x);
      bool ok = inverse_diff(diff(x)) == x && cy.front() == x.front();
      for (int i = 0; i < n && ok; ++i) {
        ok = wrap4(cy[i]) == x[i];
        if (i) ok = ok && cy[i] > cy[i - 1] && cy[i] - cy[i - 1] <= 4;
      }
      ok = ok && apply_defects(x, DefectSet{}) == x && apply_defects(x, DefectSet(cy)).empty();
      auto [lo, hi] = shift_range(x);
      for (int a : {lo, hi}) {
        auto s = shift(Strand(x), a);
        auto sc = s.schedule();
        ok = ok && sc.front() >= 1 && sc.back() <= 4 * n && cycles(s.strand()) != Schedule{} &&
             shift_symbols(s.strand(), -a) == x;
        for (int i = 0; i < n && ok; ++i) ok = sc[i] == cy[i] + a && wrap4(sc[i]) == s.strand()[i];
      }
      if (!ok) c.fail({{"x", io::word_json(x)}});
    }
  c.metrics = {{"words", words}};
  return c;
}

// |B^d(x)| = |{d-4, ..., d-1} & (cycle(z) + {0})| with z the defect output.
inline Check ball_sizes(int max_n) {
  Check c{"ball_size_formula"};
  c.params = {{"max_n", max_n}};
  long long cases = 0;
  for (int n = 1; n <= max_n; ++n)
    for (const auto& x : all_words(n))
      for (int d : cycles(x)) {
        ++cases;
        auto z = apply_defects(x, DefectSet{d});
        auto cz = cycles(z);
        std::set<int> support(cz.begin(), cz.end());
        support.insert(0);
        long long predicted = 0;
        for (int e = d - 4; e <= d - 1; ++e) predicted += support.count(e);
        long long actual = static_cast<long long>(confusable_ball(x, DefectSet{d}).size());
        if (predicted != actual)
          c.fail({{"x", io::word_json(x)}, {"delta", d}, {"predicted", predicted}, {"actual", actual}});
      }
  c.metrics = {{"cases", cases}};
  return c;
}

namespace detail {

inline std::vector<int> deleted_indices(std::span<const Symbol> x, const DefectSet& d) {
  std::vector<int> out;
  auto cy = cycles(x);
  for (int i = 0; i < static_cast<int>(x.size()); ++i)
    if (d.contains(cy[i])) out.push_back(i + 1);
  return out;
}

// Signature deletion patterns (1-based, ascending) mapping sig(x) to sig(z).
inline std::vector<std::vector<int>> signature_deletions(const Bits& sx, const Bits& sz) {
  std::vector<std::vector<int>> out;
  const int L = static_cast<int>(sx.size());
  const int k = L - static_cast<int>(sz.size());
  if (k == 1) {
    for (int p = 1; p <= L; ++p)
      if (binary::erase_positions(sx, {p}) == sz) out.push_back({p});
  } else if (k == 2) {
    for (int p = 1; p <= L; ++p)
      for (int q = p + 1; q <= L; ++q)
        if (binary::erase_positions(sx, {p, q}) == sz) out.push_back({p, q});
  }
  return out;
}

}  // namespace detail

// For y in B^D(x): deleted indices satisfy |i_k - j_k| <= 4k - 1, and some pair of signature
// deletion patterns satisfies |i_k - j_k| <= 4k.
inline Check index_windows(int max_n) {
  Check c{"index_windows"};
  c.params = {{"max_n", max_n}};
  long long pairs = 0;
  for (int n = 2; n <= max_n; ++n)
    for (const auto& x : all_words(n)) {
      auto cy = cycles(x);
      for (std::size_t t = 1; t <= 2; ++t)
        for (const auto& sub : subsets_of_size(cy, t)) {
          DefectSet d(sub);
          auto z = apply_defects(x, d);
          auto ix = detail::deleted_indices(x, d);
          auto sx = detail::signature_deletions(signature(x), comparison_bits(z));
          for (const auto& y : confusable_ball(x, d)) {
            ++pairs;
            auto iy = detail::deleted_indices(y, d);
            bool ok = iy.size() == ix.size();
            for (std::size_t k = 0; k < ix.size() && ok; ++k) ok = std::abs(ix[k] - iy[k]) <= 4 * static_cast<int>(k + 1) - 1;
            bool sig_ok = n < 3 || z.size() < 2;
            if (!sig_ok) {
              auto sy = detail::signature_deletions(signature(y), comparison_bits(z));
              for (const auto& a : sx)
                for (const auto& b : sy) {
                  bool fits = true;
                  for (std::size_t k = 0; k < a.size(); ++k) fits = fits && std::abs(a[k] - b[k]) <= 4 * static_cast<int>(k + 1);
                  sig_ok = sig_ok || fits;
                }
            }
            if (!ok || !sig_ok)
              c.fail({{"x", io::word_json(x)}, {"y", io::word_json(y)}, {"delta", io::defects_json(d)},
                      {"symbol_bound", ok}, {"signature_bound", sig_ok}});
          }
        }
    }
  c.metrics = {{"ball_pairs", pairs}};
  return c;
}

// ---------------------------------------------------------------------------------------------
// KDCC

inline std::vector<DefectSet> defect_sets(int n, int t, bool include_smaller) {
  std::vector<int> all;
  for (int d = 1; d <= 4 * n; ++d) all.push_back(d);
  std::vector<DefectSet> out;
  for (int k = include_smaller ? 1 : t; k <= t; ++k)
    for (auto& s : subsets_of_size(all, static_cast<std::size_t>(k))) out.emplace_back(std::move(s));
  return out;
}

inline double size_floor(kdcc::Family f, int n) {
  double total = std::pow(4.0, n);
  switch (f) {
    case kdcc::Family::sum1: return total / 4.0;
    case kdcc::Family::svt1: return total / 10.0;
    case kdcc::Family::array2: return 0.0;
  }
  return 0.0;
}

// Best-residue codebook: size, pairwise disjointness under every defect set of size <= t, and the
// decode roundtrip under every defect set of size exactly t.
inline Check kdcc_exhaustive(kdcc::Family f, int n) {
  Check c{"kdcc_exhaustive"};
  const int t = kdcc::defects_corrected(f);
  auto best = kdcc::best_residues(f, n);
  auto code = kdcc::codebook(best.spec);
  c.params = {{"family", kdcc::to_string(f)}, {"n", n}, {"t", t}, {"code", io::kdcc_json(best.spec)}};
  const double floor = size_floor(f, n);
  if (static_cast<double>(code.size()) < floor) c.fail({{"size", code.size()}, {"floor", floor}});
  long long collisions = 0, decodes = 0, failures = 0;
  for (const auto& d : defect_sets(n, t, true)) {
    std::map<Word, const Word*> seen;
    for (const auto& x : code) {
      auto [it, fresh] = seen.emplace(apply_defects(x, d), &x);
      if (!fresh) {
        ++collisions;
        c.fail({{"kind", "collision"}, {"x", io::word_json(*it->second)}, {"y", io::word_json(x)},
                {"delta", io::defects_json(d)}});
      }
    }
    if (static_cast<int>(d.size()) != t) continue;
    for (const auto& x : code) {
      ++decodes;
      json witness{{"kind", "decode"}, {"x", io::word_json(x)}, {"delta", io::defects_json(d)}};
      try {
        if (kdcc::decode({apply_defects(x, d), d, n}, best.spec) != x) {
          ++failures;
          c.fail(witness);
        }
      } catch (const DecodeFailure& e) {
        ++failures;
        witness["error"] = e.what();
        c.fail(witness);
      }
    }
  }
  c.metrics = {{"code_size", code.size()},
               {"size_floor", floor},
               {"redundancy_bits", 2.0 * n - std::log2(static_cast<double>(code.size()))},
               {"collisions", collisions},
               {"decodes", decodes},
               {"decode_failures", failures}};
  return c;
}

// Random strands decoded with their own residues under every defect set of size t inside
// cycle(x).  Failures are split into genuine collisions (another class member shares the output)
// and decoder misses.
inline Check kdcc_sampled(kdcc::Family f, int n, int count, std::uint64_t seed) {
  Check c{"kdcc_sampled"};
  const int t = kdcc::defects_corrected(f);
  c.params = {{"family", kdcc::to_string(f)}, {"n", n}, {"t", t}, {"strands", count}, {"seed", seed}};
  Rng rng(seed, 1);
  long long decodes = 0, failures = 0, wrong = 0, genuine = 0, affected = 0;
  for (int s = 0; s < count; ++s) {
    auto x = rng.word(n);
    auto spec = kdcc::residues_of(x, f);
    bool hit = false;
    for (auto& sub : subsets_of_size(cycles(x), static_cast<std::size_t>(t))) {
      DefectSet d(std::move(sub));
      ++decodes;
      auto z = apply_defects(x, d);
      try {
        if (kdcc::decode({z, d, n}, spec) == x) continue;
        ++wrong;
      } catch (const DecodeFailure&) {
      }
      ++failures;
      hit = true;
      bool collision = false;
      for (const auto& y : confusable_ball(x, d)) collision = collision || (y != x && kdcc::membership(spec, y));
      genuine += collision;
      c.fail({{"x", io::word_json(x)}, {"code", io::kdcc_json(spec)}, {"delta", io::defects_json(d)},
              {"received", io::word_json(z)}, {"genuine_collision", collision}});
    }
    affected += hit;
  }
  c.metrics = {{"decodes", decodes},   {"failures", failures},           {"wrong_strand", wrong},
               {"genuine_collisions", genuine}, {"strands_affected", affected}};
  return c;
}

// ---------------------------------------------------------------------------------------------
// Binary codes

// Erasure and bounded-deletion roundtrips of the array code; distinct weighted syndromes across
// ambiguous-row assignments; redundancy at the best residues.
inline Check array_code(int n_lo, int n_hi, int p_max) {
  Check c{"array_code"};
  c.params = {{"n", {n_lo, n_hi}}, {"p_max", p_max}};
  long long erasures = 0, deletions = 0, ambiguous = 0;
  double worst_slack = 1e9;
  for (int n = n_lo; n <= n_hi; ++n) {
    auto words = all_bits(n);
    for (int P = 1; P <= p_max; ++P) {
      std::map<std::pair<std::vector<int>, long long>, long long> classes;
      for (const auto& x : words) {
        auto p = binary::array_syndromes(x, P);
        ++classes[{p.row_sums, p.weighted}];
        for (int s1 = 1; s1 + P - 1 <= n; ++s1)
          for (int s2 = s1; s2 + P - 1 <= n; ++s2) {
            std::vector<binary::Interval> iv{{s1, P}, {s2, P}};
            json where{{"x", io::bits_string(x)}, {"P", P}, {"intervals", {s1, s2}}};
            Bits garbled = x;
            for (auto& b : iv)
              for (int i = b.start; i <= b.end(); ++i) garbled[i - 1] ^= 1;
            std::vector<long long> sums;
            ++erasures;
            try {
              if (binary::array_erasure_decode(garbled, iv, p, &sums) != x) c.fail(where);
            } catch (const DecodeFailure&) {
              c.fail(where);
            }
            if (sums.size() > 1) {
              ++ambiguous;
              std::sort(sums.begin(), sums.end());
              if (std::adjacent_find(sums.begin(), sums.end()) != sums.end()) c.fail({{"kind", "zero discriminant"}, {"at", where}});
            }
            for (int i = s1; i <= iv[0].end(); ++i)
              for (int j = s2; j <= iv[1].end(); ++j) {
                if (i == j) continue;
                ++deletions;
                try {
                  if (binary::array_bounded_decode(binary::erase_positions(x, {i, j}), iv, p) != x)
                    c.fail({{"kind", "deletion"}, {"at", where}, {"deleted", {i, j}}});
                } catch (const DecodeFailure&) {
                  c.fail({{"kind", "deletion"}, {"at", where}, {"deleted", {i, j}}});
                }
              }
          }
      }
      long long biggest = 0;
      for (const auto& [k, v] : classes) biggest = std::max(biggest, v);
      double redundancy = n - std::log2(static_cast<double>(biggest));
      double bound = std::log2(n) + 2.0 * P * std::log2(3.0);
      worst_slack = std::min(worst_slack, bound - redundancy);
      if (redundancy > bound + 1e-9) c.fail({{"kind", "redundancy"}, {"n", n}, {"P", P}, {"bits", redundancy}});
    }
  }
  c.metrics = {{"erasure_decodes", erasures},
               {"deletion_decodes", deletions},
               {"ambiguous_assignments", ambiguous},
               {"min_redundancy_slack_bits", worst_slack}};
  return c;
}

// Every payload of length n, both interval regimes with payload-touching intervals, plus the
// materialized redundancy budget.
inline Check ecode_audit(int n, int P1, int P2) {
  Check c{"ecode"};
  binary::ECode code(n, P1, P2);
  const int N = code.length();
  c.params = {{"n", n}, {"P1", P1}, {"P2", P2}, {"rho", code.rho()}};
  long long adjacent = 0, separated = 0, tail = 0;
  for (const auto& x : all_bits(n)) {
    auto cw = code.encode(x);
    for (int s1 = 1; s1 <= n; ++s1)
      for (int s2 = s1; s2 + P2 - 1 <= N && s2 <= n + P1 + P2; ++s2) {
        std::vector<binary::Interval> iv{{s1, P1}, {s2, P2}};
        bool sep = s2 > iv[0].end() + 1;
        for (int i = s1; i <= iv[0].end(); ++i)
          for (int j = s2; j <= iv[1].end(); ++j) {
            if (i >= j) continue;
            (sep ? separated : adjacent)++;
            json where{{"x", io::bits_string(x)}, {"intervals", {s1, s2}}, {"deleted", {i, j}}};
            try {
              if (code.decode(binary::erase_positions(cw, {i, j}), iv) != x) c.fail(where);
            } catch (const DecodeFailure& e) {
              where["error"] = e.what();
              c.fail(where);
            }
          }
      }
    // Intervals entirely in the tail leave the payload alone.
    std::vector<binary::Interval> iv{{n + 1, P1}, {N - P2 + 1, P2}};
    ++tail;
    if (code.decode(binary::erase_positions(cw, {n + 1, N}), iv) != x) c.fail({{"x", io::bits_string(x)}, {"kind", "tail"}});
  }
  const int budget = binary::e_budget(n, P1, P2);
  if (code.redundancy() > budget) c.fail({{"kind", "budget"}, {"redundancy", code.redundancy()}, {"budget", budget}});
  c.metrics = {{"adjacent_or_overlapping", adjacent}, {"separated", separated}, {"tail_only", tail},
               {"redundancy_bits", code.redundancy()}, {"budget_bits", budget}};
  return c;
}

inline Check prefix_audit(int k, int P1, int P2) {
  Check c{"prefix_code"};
  binary::PrefixCode pc(k, P1, P2);
  const int n = pc.length();
  c.params = {{"k", k}, {"P1", P1}, {"P2", P2}, {"length", n}};
  long long two = 0, one = 0;
  for (const auto& z : all_bits(k)) {
    auto cw = pc.encode(z);
    for (int p = 1; p <= n; ++p) {
      ++one;
      try {
        if (pc.decode_one(binary::erase_positions(cw, {p})) != cw) c.fail({{"z", io::bits_string(z)}, {"deleted", p}});
      } catch (const DecodeFailure&) {
        c.fail({{"z", io::bits_string(z)}, {"deleted", p}});
      }
    }
    for (int s1 = 1; s1 + P1 - 1 <= n; ++s1)
      for (int s2 = s1; s2 + P2 - 1 <= n; ++s2) {
        std::vector<binary::Interval> iv{{s1, P1}, {s2, P2}};
        for (int i = s1; i <= iv[0].end(); ++i)
          for (int j = std::max(s2, i + 1); j <= iv[1].end(); ++j) {
            ++two;
            json where{{"z", io::bits_string(z)}, {"intervals", {s1, s2}}, {"deleted", {i, j}}};
            try {
              if (pc.decode_two(binary::erase_positions(cw, {i, j}), iv) != cw) c.fail(where);
            } catch (const DecodeFailure& e) {
              where["error"] = e.what();
              c.fail(where);
            }
          }
      }
  }
  c.metrics = {{"single_deletion_decodes", one}, {"two_deletion_decodes", two}, {"redundancy_bits", pc.redundancy()}};
  return c;
}

// ---------------------------------------------------------------------------------------------
// Cover and SDCC

inline Check cover_selection(const std::vector<int>& ns, int trials, std::uint64_t seed) {
  Check c{"cover_selection"};
  c.params = {{"n", ns}, {"trials", trials}, {"seed", seed}};
  json per_n = json::object();
  for (int n : ns) {
    const int m1 = sdcc::formula_m1(n);
    Rng rng(seed, static_cast<std::uint64_t>(n));
    double worst = 0;
    for (int trial = 0; trial < trials; ++trial) {
      std::vector<Word> bases;
      for (int i = 0; i < 4 * m1; ++i) bases.push_back(rng.word(n));
      try {
        auto plan = sdcc::select_cover_shifts(bases, m1);
        for (const auto& b : plan.uncovered)
          for (std::size_t i = 1; i < b.size(); ++i)
            if (b[i - 1]) worst = std::max(worst, static_cast<double>(b[i]) / b[i - 1]);
        if (!plan.contracts()) c.fail({{"n", n}, {"trial", trial}, {"kind", "contraction"}, {"uncovered", plan.uncovered}});
      } catch (const ConstructionError&) {
        json strands = json::array();
        for (const auto& b : bases) strands.push_back(io::word_json(b));
        c.fail({{"n", n}, {"trial", trial}, {"kind", "coverage"}, {"strands", strands}});
      }
    }
    per_n[std::to_string(n)] = {{"m1", m1}, {"cover_strands", 4 * m1}, {"worst_step_ratio", worst}};
  }
  c.metrics = per_n;
  return c;
}

// Single-defect window soundness: every defect explaining the same cover-strand output lies within
// 4L + 4 of the true one, L the longest signature run.
inline Check window_soundness(int n, long long samples, std::uint64_t seed) {
  Check c{"window_soundness"};
  c.params = {{"n", n}, {"samples", samples ? json(samples) : json("exhaustive")}, {"seed", seed}};
  auto check = [&](const Word& x) {
    auto sig = comparison_bits(x);
    int L = 0, run = 0;
    for (std::size_t i = 0; i < sig.size(); ++i) {
      run = (i && sig[i] == sig[i - 1]) ? run + 1 : 1;
      L = std::max(L, run);
    }
    for (int d : cycles(x)) {
      auto z = apply_defects(x, DefectSet{d});
      for (int e = 1; e <= 4 * n; ++e)
        if (std::abs(e - d) > 4 * L + 4 && apply_defects(x, DefectSet{e}) == z)
          c.fail({{"x", io::word_json(x)}, {"delta", d}, {"explains", e}, {"longest_run", L}});
    }
  };
  long long words = 0;
  if (samples == 0) {
    for (const auto& x : all_words(n)) check(x), ++words;
  } else {
    Rng rng(seed, 2);
    for (long long s = 0; s < samples; ++s) check(rng.word(n)), ++words;
  }
  c.metrics = {{"words", words}};
  return c;
}

// Every defect set of size <= t, or a stratified grid: all singletons, gaps 1..8 from every
// cycle, and one random partner per cycle.
inline std::vector<DefectSet> sdcc_grid(int n, int t, bool exhaustive, Rng& rng) {
  std::vector<DefectSet> out{DefectSet{}};
  if (exhaustive || t == 1) {
    auto more = defect_sets(n, t, true);
    out.insert(out.end(), more.begin(), more.end());
    return out;
  }
  const int top = 4 * n;
  std::set<DefectSet> grid;
  for (int d = 1; d <= top; ++d) {
    grid.insert(DefectSet{d});
    for (int g = 1; g <= 8; ++g)
      if (d + g <= top) grid.insert(DefectSet{d, d + g});
    if (d < top) grid.insert(DefectSet{d, rng.uniform(d + 1, top)});
  }
  out.insert(out.end(), grid.begin(), grid.end());
  return out;
}

inline Check sdcc_roundtrip(int t, sdcc::TupleShape shape, int tuples, std::uint64_t seed, bool exhaustive) {
  Check c{t == 1 ? "sdcc1_roundtrip" : "sdcc2_roundtrip"};
  auto sh = sdcc::resolved(shape);
  c.params = {{"t", t}, {"shape", io::shape_json(sh)}, {"tuples", tuples}, {"seed", seed},
              {"defects", exhaustive || t == 1 ? "exhaustive" : "stratified"}};
  Rng rng(seed, 3);
  long long decodes = 0, failures = 0;
  std::size_t widest = 0;
  for (int s = 0; s < tuples; ++s) {
    auto [tuple, p1, p2] = [&] {
      if (t == 1) {
        auto [tu, p] = sdcc::sdcc1_witness(sh, rng);
        return std::tuple{tu, p, sdcc::Sdcc2Params{}};
      }
      auto [tu, p] = sdcc::sdcc2_witness(sh, rng);
      return std::tuple{tu, sdcc::Sdcc1Params{}, p};
    }();
    const bool member = t == 1 ? sdcc::sdcc1_membership(tuple, p1) : sdcc::sdcc2_membership(tuple, p2);
    if (!member) c.fail({{"kind", "witness not a member"}, {"tuple", io::tuple_json(tuple)}});
    for (const auto& d : sdcc_grid(sh.n, t, exhaustive, rng)) {
      ++decodes;
      auto r = apply_defects_tuple(tuple, d);
      json where{{"tuple", io::tuple_json(tuple)}, {"delta", io::defects_json(d)}};
      try {
        auto out = t == 1 ? sdcc::sdcc1_decode(r, tuple.shifts(), p1) : sdcc::sdcc2_decode(r, tuple.shifts(), p2);
        for (const auto& w : out.windows) widest = std::max(widest, static_cast<std::size_t>(w.second - w.first + 1));
        if (!(out.tuple == tuple)) {
          ++failures;
          c.fail(where);
        }
      } catch (const DecodeFailure& e) {
        ++failures;
        where["error"] = e.what();
        c.fail(where);
      }
    }
  }
  c.metrics = {{"decodes", decodes}, {"failures", failures}, {"widest_window", widest},
               {"window_P", sh.window}, {"regular_window", sh.regular_window}};
  return c;
}

// Pairwise disjoint defect balls over the whole residue class of one constructed witness.
inline Check sdcc_toy(int t, int n, int m, std::uint64_t seed) {
  Check c{t == 1 ? "sdcc1_ball_disjointness" : "sdcc2_ball_disjointness"};
  Rng rng(seed, 4);
  sdcc::TupleShape shape{n, m, 1};
  c.params = {{"t", t}, {"n", n}, {"m", m}, {"m1", 1}, {"seed", seed}};
  std::vector<StrandTuple> code;
  json witness;
  if (t == 1) {
    auto [tu, p] = sdcc::sdcc1_witness(shape, rng);
    code = sdcc::sdcc1_class(tu.shifts(), p);
    witness = {{"tuple", io::tuple_json(tu)}, {"params", io::sdcc1_params_json(p)}};
  } else {
    auto [tu, p] = sdcc::sdcc2_witness(shape, rng);
    code = sdcc::sdcc2_class(tu.shifts(), p);
    witness = {{"tuple", io::tuple_json(tu)}, {"params", io::sdcc2_params_json(p)}};
  }
  auto b = sdcc::balls_disjoint(code, t);
  if (code.empty()) c.fail({{"kind", "empty class"}, {"witness", witness}});
  if (!b.disjoint) c.fail({{"kind", "intersecting balls"}, {"output", b.witness}, {"witness", witness}});
  c.metrics = {{"class_size", b.codewords}, {"ball_outputs", b.outputs}};
  return c;
}

// Random members plus members carrying a forced alternating segment, all deletion pairs.
inline Check c2d_roundtrip(int n, int members, int forced, std::uint64_t seed) {
  Check c{"c2d_roundtrip"};
  Rng rng(seed, 5);
  const int rw = default_regular_window(n);
  c.params = {{"n", n}, {"members", members}, {"forced_alternating", forced}, {"seed", seed},
              {"regular_window", rw}, {"regularity", rw > n - 1 ? "vacuous" : "active"}};
  std::map<std::string, long long> branches;
  long long decodes = 0, failures = 0;
  for (int s = 0; s < members + forced; ++s) {
    Word x;
    do {
      x = rng.word(n);
      if (s >= members) {
        int len = std::min(n, 8);
        int off = rng.uniform(0, n - len);
        Symbol a = static_cast<Symbol>(rng.uniform(1, 3));
        Symbol b = static_cast<Symbol>(rng.uniform(a + 1, 4));
        for (int i = 0; i < len; ++i) x[off + i] = i % 2 ? a : b;
      }
    } while (!is_regular(comparison_bits(x), rw));
    auto p = sdcc::c2d_params_of(x, rw);
    for (int i = 1; i <= n; ++i)
      for (int j = i; j <= n; ++j) {
        std::vector<int> del = i == j ? std::vector<int>{i} : std::vector<int>{i, j};
        auto r = binary::erase_positions(x, del);
        ++decodes;
        json where{{"x", io::word_json(x)}, {"deleted", del}};
        try {
          auto out = sdcc::c2d_decode(r, p);
          ++branches[sdcc::to_string(out.branch)];
          if (out.word != x) {
            ++failures;
            c.fail(where);
          }
        } catch (const DecodeFailure& e) {
          ++failures;
          where["error"] = e.what();
          c.fail(where);
        }
      }
  }
  json b = json::object();
  for (const auto& [k, v] : branches) b[k] = v;
  if (forced && !branches.count("alternating")) c.fail({{"kind", "alternating branch never exercised"}});
  c.metrics = {{"decodes", decodes}, {"failures", failures}, {"branches", b}};
  return c;
}

// ---------------------------------------------------------------------------------------------
// Bounds

inline Check bounds_check(const std::vector<int>& verify_ns, const std::vector<int>& compare_ns) {
  Check c{"bounds"};
  c.params = {{"verify_n", verify_ns}, {"compare_n", compare_ns}};
  json reports = json::array();
  auto s5 = bounds::cover_size(5);
  if (s5.count != 1012 || std::llround(static_cast<double>(s5.closed_form)) != 1012)
    c.fail({{"kind", "cover_size(5)"}, {"count", s5.count}, {"closed_form", static_cast<double>(s5.closed_form)}});
  for (int n = 5; n <= 25; ++n)
    if (!bounds::cover_size(n).agree) c.fail({{"kind", "closed form"}, {"n", n}});
  for (int n : verify_ns) {
    auto v = bounds::verify_cover(n);
    if (!v.ok) c.fail({{"kind", "verify_cover"}, {"n", n}, {"witness", v.witness}});
  }
  double previous = 1e9;
  for (int n : compare_ns) {
    auto b = bounds::kdcc_size_bounds(n);
    reports.push_back(io::bound_report_json(b));
    auto upper = b.cover_size;
    for (auto f : {kdcc::Family::sum1, kdcc::Family::svt1}) {
      auto size = kdcc::best_residues(f, n).size;
      if (static_cast<unsigned long long>(size) > upper)
        c.fail({{"kind", "independent set bound"}, {"family", kdcc::to_string(f)}, {"n", n}, {"size", size}});
    }
    // The bound is log 4 minus a vanishing term that never grows with n.
    if (std::abs(b.redundancy_bits_lower_bound + b.vanishing_term_bits - 2.0) > 1e-9 || b.vanishing_term_bits > previous + 1e-12)
      c.fail({{"kind", "redundancy bound"}, {"n", n}});
    previous = b.vanishing_term_bits;
  }
  c.metrics = {{"cover_size_5", s5.count}, {"reports", reports}};
  return c;
}

}  // namespace syndef::verify
