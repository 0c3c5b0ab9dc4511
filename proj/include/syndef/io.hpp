#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "syndef/bounds.hpp"
#include "syndef/core.hpp"
#include "syndef/kdcc.hpp"
#include "syndef/sdcc.hpp"
#include "syndef/sketch_code.hpp"

namespace syndef::io {

using json = nlohmann::ordered_json;

inline json word_json(std::span<const Symbol> w) {
  json a = json::array();
  for (auto s : w) a.push_back(static_cast<int>(s));
  return a;
}

inline Word word_from_json(const json& j) {
  if (!j.is_array()) throw ParameterError("strand must be a JSON array");
  Word w;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParameterError("strand entries must be integers");
    int s = v.get<int>();
    if (s < 1 || s > 4) throw ParameterError("strand symbol outside 1..4");
    w.push_back(static_cast<Symbol>(s));
  }
  return w;
}

inline Strand strand_from_json(const json& j) { return Strand(word_from_json(j)); }

inline json defects_json(const DefectSet& d) { return json(d.cycles()); }

inline DefectSet defects_from_json(const json& j) {
  if (!j.is_array()) throw ParameterError("defect set must be a JSON array");
  std::vector<int> c;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParameterError("defect cycles must be integers");
    c.push_back(v.get<int>());
  }
  return DefectSet(std::move(c));
}

// {"n", "m", "strands"}; tuples with cover strands add "cover_count" and "shifts".
inline json tuple_json(const StrandTuple& t) {
  json j;
  j["n"] = t.n();
  j["m"] = t.m();
  if (t.cover_count()) {
    j["cover_count"] = t.cover_count();
    j["shifts"] = t.shifts();
  }
  j["strands"] = json::array();
  for (const auto& s : t.strands()) j["strands"].push_back(word_json(s.word()));
  return j;
}

inline StrandTuple tuple_from_json(const json& j) {
  if (!j.is_object() || !j.contains("strands")) throw ParameterError("tuple JSON needs a strands array");
  std::vector<Strand> s;
  for (const auto& w : j.at("strands")) s.push_back(strand_from_json(w));
  std::vector<int> shifts;
  if (j.contains("shifts")) shifts = j.at("shifts").get<std::vector<int>>();
  if (j.contains("cover_count") && j.at("cover_count").get<std::size_t>() != shifts.size())
    throw ParameterError("cover_count disagrees with shifts");
  StrandTuple t(std::move(s), std::move(shifts));
  if (j.contains("n") && j.at("n").get<std::size_t>() != t.n()) throw ParameterError("tuple n disagrees with strands");
  if (j.contains("m") && j.at("m").get<std::size_t>() != t.m()) throw ParameterError("tuple m disagrees with strands");
  return t;
}

inline json received_json(const ReceivedTuple& r) {
  json a = json::array();
  for (const auto& w : r) a.push_back(word_json(w));
  return a;
}

inline json kdcc_json(const kdcc::Spec& s) {
  json r;
  switch (s.family) {
    case kdcc::Family::sum1: r["a"] = s.a; break;
    case kdcc::Family::svt1:
      r["a"] = s.a;
      r["b"] = s.b;
      break;
    case kdcc::Family::array2:
      r["row_sums"] = s.row_sums;
      r["weighted"] = s.weighted;
      break;
  }
  return json{{"family", kdcc::to_string(s.family)}, {"n", s.n}, {"residues", r}};
}

inline kdcc::Spec kdcc_from_json(const json& j) {
  kdcc::Spec s;
  s.family = kdcc::family_from_string(j.at("family").get<std::string>());
  s.n = j.at("n").get<int>();
  const auto& r = j.at("residues");
  switch (s.family) {
    case kdcc::Family::sum1: s.a = r.at("a").get<long long>(); break;
    case kdcc::Family::svt1:
      s.a = r.at("a").get<long long>();
      s.b = r.at("b").get<int>();
      break;
    case kdcc::Family::array2:
      s.row_sums = r.at("row_sums").get<std::vector<int>>();
      s.weighted = r.at("weighted").get<long long>();
      break;
  }
  kdcc::validate(s);
  return s;
}

inline json codebook_json(const kdcc::Spec& s, const std::vector<Word>& words) {
  json j = kdcc_json(s);
  j["size"] = words.size();
  j["strands"] = json::array();
  for (const auto& w : words) j["strands"].push_back(word_json(w));
  return j;
}

inline std::string bits_string(std::span<const std::uint8_t> b) { return format_digits(b); }

// {"e1": [odd, even], "e2": [f0, f1, f2], "xi": bits, "params": {...}} with every modulus.
inline json sketch_bundle_json(const binary::ECode& code, binary::BitSpan x) {
  auto e1 = binary::e1_sketch(x, code.P1(), code.P2());
  auto e2 = binary::e2_sketch(x, code.P1(), code.P2());
  auto summary = code.summary(x);
  auto xi = binary::sketch_xi(summary);
  json p{{"n", code.n()},
         {"P1", code.P1()},
         {"P2", code.P2()},
         {"rho", code.rho()},
         {"P", code.P()},
         {"e1_modulus", e1.modulus},
         {"f1_modulus", e2.f1_modulus},
         {"f2_modulus", e2.f2_modulus},
         {"xi_length", xi.length},
         {"xi_modulus", xi.modulus}};
  return json{{"e1", {e1.odd, e1.even}},
              {"e2", {e2.f0, e2.f1, e2.f2}},
              {"xi", bits_string(binary::sketch_bits(xi))},
              {"params", p}};
}

struct SketchBundle {
  binary::E1Sketch e1;
  binary::E2Sketch e2;
  binary::XiSketch xi;
};

inline SketchBundle sketch_bundle_from_json(const json& j) {
  const auto& p = j.at("params");
  SketchBundle b;
  b.e1 = {j.at("e1").at(0).get<std::uint64_t>(), j.at("e1").at(1).get<std::uint64_t>(),
          p.at("e1_modulus").get<std::uint64_t>(), p.at("rho").get<int>(), p.at("n").get<int>()};
  b.e2.n = p.at("n").get<int>();
  b.e2.f0 = j.at("e2").at(0).get<int>();
  b.e2.f1 = j.at("e2").at(1).get<long long>();
  b.e2.f2 = j.at("e2").at(2).get<long long>();
  b.e2.f1_modulus = p.at("f1_modulus").get<long long>();
  b.e2.f2_modulus = p.at("f2_modulus").get<long long>();
  b.xi = binary::sketch_from_bits(parse_bits(j.at("xi").get<std::string>()), p.at("xi_length").get<int>());
  if (b.xi.modulus != p.at("xi_modulus").get<std::uint64_t>()) throw ParameterError("xi modulus mismatch");
  return b;
}

inline json shape_json(const sdcc::TupleShape& s) {
  return json{{"n", s.n}, {"m", s.m}, {"m1", s.m1}, {"window", s.window}, {"regular_window", s.regular_window}};
}

inline json sdcc1_params_json(const sdcc::Sdcc1Params& p) {
  return json{{"shape", shape_json(p.shape)}, {"s", p.s}, {"b", p.b}, {"d", p.d}, {"e", p.e}};
}

inline json c2d_params_json(const sdcc::C2dParams& p) {
  return json{{"sketch", p.sketch},
              {"counts", p.counts},
              {"position_sums", p.position_sums},
              {"weighted_run", p.weighted_run},
              {"position_modulus", p.position_modulus},
              {"regular_window", p.regular_window}};
}

inline json sdcc2_params_json(const sdcc::Sdcc2Params& p) {
  json j{{"shape", shape_json(p.shape)}, {"cover", json::array()}, {"remaining", json::array()}};
  for (const auto& c : p.cover) j["cover"].push_back(c2d_params_json(c));
  for (const auto& r : p.remaining)
    j["remaining"].push_back(json{{"e1", {r.e1.odd, r.e1.even}},
                                  {"e2", {r.e2.f0, r.e2.f1, r.e2.f2}},
                                  {"position_sums", r.position_sums}});
  return j;
}

inline json bound_report_json(const bounds::SizeBounds& b) {
  return json{{"n", b.n},
              {"cover_size", b.cover_size},
              {"closed_form", static_cast<double>(b.closed_form)},
              {"best_sum1_size", b.best_sum1_size},
              {"redundancy_bits_lower_bound", b.redundancy_bits_lower_bound},
              {"redundancy_quaternary_symbols_x2", 2.0 * b.redundancy_quaternary},
              {"vanishing_term_bits", b.vanishing_term_bits}};
}

}  // namespace syndef::io
