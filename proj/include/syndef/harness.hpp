#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "syndef/io.hpp"
#include "syndef/verify.hpp"

namespace syndef::harness {

using io::json;

enum class ExitCode { pass = 0, fail = 1, usage = 2 };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& tasks() {
  static const std::vector<std::string> t{"simulate", "verify-kdcc", "verify-sdcc", "enumerate", "bounds", "sketch-audit"};
  return t;
}

struct Mode {
  bool exhaustive = true;
  long long count = 0;

  static Mode parse(const std::string& s) {
    if (s == "exhaustive") return {};
    const std::string prefix = "sampled:";
    if (s.rfind(prefix, 0) == 0) {
      long long c = 0;
      try {
        c = std::stoll(s.substr(prefix.size()));
      } catch (const std::exception&) {
        throw UsageError("bad sample count in mode '" + s + "'");
      }
      if (c < 1) throw UsageError("sample count must be positive");
      return {false, c};
    }
    throw UsageError("mode must be exhaustive or sampled:COUNT");
  }
  std::string str() const { return exhaustive ? "exhaustive" : "sampled:" + std::to_string(count); }
};

struct ExperimentConfig {
  std::string task;
  int n = 0;
  int m = 0;
  int t = 1;
  std::string family = "sum1";
  std::uint64_t seed = 0;
  Mode mode;
  std::string out;
  json params = json::object();
  bool timing = false;
};

// Exhaustive ceilings; SYNDEF_MAX_EXHAUSTIVE_N raises or lowers all of them.
struct Ceilings {
  int words = 7;   // Sigma^n sweeps
  int tuples = 8;  // tuple ball checks
  std::vector<std::string> warnings;
};

inline Ceilings ceilings() {
  Ceilings c;
  if (const char* env = std::getenv("SYNDEF_MAX_EXHAUSTIVE_N")) {
    int v = 0;
    try {
      v = std::stoi(env);
    } catch (const std::exception&) {
      throw UsageError("SYNDEF_MAX_EXHAUSTIVE_N must be an integer");
    }
    if (v < 1) throw UsageError("SYNDEF_MAX_EXHAUSTIVE_N must be positive");
    if (v > c.words) c.warnings.push_back("exhaustive ceiling raised to n=" + std::to_string(v) + " by SYNDEF_MAX_EXHAUSTIVE_N");
    c.words = c.tuples = v;
  }
  return c;
}

struct Report {
  json config;
  std::vector<verify::Check> rows;
  std::vector<std::string> warnings;
  json artifact;  // codebook for enumerate
  std::optional<double> wall_seconds;

  bool pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
  ExitCode exit_code() const { return pass() ? ExitCode::pass : ExitCode::fail; }
};

inline json config_json(const ExperimentConfig& c) {
  return json{{"task", c.task}, {"n", c.n},     {"m", c.m},   {"t", c.t},
              {"family", c.family}, {"seed", c.seed}, {"mode", c.mode.str()}, {"params", c.params}};
}

inline json report_json(const Report& r) {
  json j{{"config", r.config}, {"pass", r.pass()}, {"warnings", r.warnings}, {"rows", json::array()}};
  for (const auto& c : r.rows) j["rows"].push_back(verify::row(c));
  if (!r.artifact.is_null()) j["artifact"] = r.artifact;
  if (r.wall_seconds) j["wall_seconds"] = *r.wall_seconds;
  return j;
}

inline std::string csv_cell(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

// One row per check: task, check, params, metrics, pass, counterexample (JSON cells).
inline std::string report_csv(const Report& r) {
  std::ostringstream os;
  os << "task,check,params,metrics,pass,counterexample\n";
  for (const auto& c : r.rows)
    os << csv_cell(r.config.value("task", "")) << ',' << csv_cell(c.name) << ',' << csv_cell(c.params.dump()) << ','
       << csv_cell(c.metrics.dump()) << ',' << (c.pass ? "true" : "false") << ',' << csv_cell(c.counterexample.dump())
       << '\n';
  return os.str();
}

namespace detail {

inline int param_int(const json& p, const char* key, int fallback) {
  if (!p.contains(key)) return fallback;
  if (!p.at(key).is_number_integer()) throw UsageError(std::string("param ") + key + " must be an integer");
  return p.at(key).get<int>();
}

inline void need(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

inline kdcc::Spec residues_from_params(const ExperimentConfig& c, kdcc::Family f) {
  if (!c.params.contains("residues")) return kdcc::best_residues(f, c.n).spec;
  json desc{{"family", kdcc::to_string(f)}, {"n", c.n}, {"residues", c.params.at("residues")}};
  try {
    return io::kdcc_from_json(desc);
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad residues: ") + e.what());
  }
}

}  // namespace detail

inline Report run(const ExperimentConfig& c) {
  using detail::need;
  using detail::param_int;
  auto start = std::chrono::steady_clock::now();
  auto lim = ceilings();
  Report r;
  r.config = config_json(c);
  r.warnings = lim.warnings;
  auto capped = [&](int n, int cap, const std::string& what) {
    need(n <= cap, what + " refuses n=" + std::to_string(n) + " above the exhaustive ceiling " + std::to_string(cap) +
                       " (set SYNDEF_MAX_EXHAUSTIVE_N)");
  };

  if (c.task == "simulate") {
    need(c.t == 1 || c.t == 2, "simulate needs t in {1, 2}");
    need(c.n >= 3, "simulate needs n >= 3");
    sdcc::TupleShape shape{c.n, c.m, param_int(c.params, "m1", 1), param_int(c.params, "window", 0),
                           param_int(c.params, "regular_window", 0)};
    need(shape.m > 4 * shape.m1, "simulate needs m > 4 m1");
    int tuples = c.mode.exhaustive ? param_int(c.params, "tuples", 1) : static_cast<int>(c.mode.count);
    r.rows.push_back(verify::sdcc_roundtrip(c.t, shape, tuples, c.seed, c.mode.exhaustive));
  } else if (c.task == "verify-kdcc") {
    kdcc::Family f;
    try {
      f = kdcc::family_from_string(c.family);
    } catch (const ParameterError& e) {
      throw UsageError(e.what());
    }
    need(c.n >= (f == kdcc::Family::sum1 ? 1 : 3), "verify-kdcc needs a larger n for this family");
    if (c.mode.exhaustive) {
      capped(c.n, f == kdcc::Family::array2 ? std::min(lim.words, 5) : lim.words, "verify-kdcc exhaustive");
      r.rows.push_back(verify::kdcc_exhaustive(f, c.n));
    } else {
      r.rows.push_back(verify::kdcc_sampled(f, c.n, static_cast<int>(c.mode.count), c.seed));
    }
  } else if (c.task == "verify-sdcc") {
    need(c.t == 1 || c.t == 2, "verify-sdcc needs t in {1, 2}");
    need(c.n >= 3 && c.m > 4, "verify-sdcc needs n >= 3 and m >= 5 (four cover strands plus one)");
    capped(c.n, std::min(lim.tuples, 8), "verify-sdcc");
    r.rows.push_back(verify::sdcc_toy(c.t, c.n, c.m, c.seed));
  } else if (c.task == "enumerate") {
    kdcc::Family f;
    try {
      f = kdcc::family_from_string(c.family);
    } catch (const ParameterError& e) {
      throw UsageError(e.what());
    }
    need(c.n >= 1, "enumerate needs n >= 1");
    capped(c.n, lim.words, "enumerate");
    auto spec = detail::residues_from_params(c, f);
    auto words = kdcc::codebook(spec);
    r.artifact = io::codebook_json(spec, words);
    verify::Check k{"enumerate"};
    k.params = io::kdcc_json(spec);
    k.metrics = {{"size", words.size()}};
    r.rows.push_back(k);
  } else if (c.task == "bounds") {
    need(c.n >= 5 && c.n <= 10, "bounds needs 5 <= n <= 10");
    std::vector<int> verify_ns;
    if (c.n <= lim.words && c.n <= bounds::kMaxVerifyN) verify_ns.push_back(c.n);
    else r.warnings.push_back("verify_cover skipped above n=" + std::to_string(std::min(lim.words, bounds::kMaxVerifyN)));
    r.rows.push_back(verify::bounds_check(verify_ns, {c.n}));
    r.artifact = r.rows.back().metrics.at("reports").at(0);
  } else if (c.task == "sketch-audit") {
    int n = c.n ? c.n : 10;
    int P1 = param_int(c.params, "P1", 2), P2 = param_int(c.params, "P2", 2);
    need(n >= 3 && P1 >= 2 && P2 >= 2, "sketch-audit needs n >= 3 and P1, P2 >= 2");
    need(n <= 12, "sketch-audit sweeps {0,1}^n and refuses n > 12");
    r.rows.push_back(verify::ecode_audit(n, P1, P2));
    int k = param_int(c.params, "k", 0);
    if (k) {
      need(k >= 3 && k <= 10, "prefix audit needs 3 <= k <= 10");
      r.rows.push_back(verify::prefix_audit(k, P1, P2));
    }
  } else {
    throw UsageError("unknown task '" + c.task + "'");
  }
  if (c.timing) r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// Writes the report (JSON, or CSV when the path ends in .csv).  Enumerate writes its codebook.
inline void write(const Report& r, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw UsageError("cannot open output file " + path);
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  if (csv) os << report_csv(r);
  else if (r.config.value("task", "") == "enumerate") os << r.artifact.dump(2) << '\n';
  else os << report_json(r).dump(2) << '\n';
}

}  // namespace syndef::harness
