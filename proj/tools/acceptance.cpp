// Runs every acceptance criterion and prints one PASS/FAIL line each.  Exit status is the number
// of failing criteria (capped at 1).

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "syndef/verify.hpp"

using namespace syndef;
using verify::Check;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  std::function<std::vector<Check>()> run;
};

std::vector<Check> range(int lo, int hi, const std::function<Check(int)>& f) {
  std::vector<Check> out;
  for (int n = lo; n <= hi; ++n) out.push_back(f(n));
  return out;
}

std::string brief(const Check& c) {
  std::string s = c.name + " " + c.metrics.dump();
  if (!c.pass) s += " counterexample=" + c.counterexample.dump();
  if (s.size() > 600) s = s.substr(0, 600) + "...";
  return s;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "channel model roundtrip and schedule invariants, n<=6", 5, [] { return std::vector{verify::channel_model(6)}; }},
      {2, "ball-size formula, n<=6", 30, [] { return std::vector{verify::ball_sizes(6)}; }},
      {3, "index windows 4k-1 and 4k, n<=5, |D|<=2", 60, [] { return std::vector{verify::index_windows(5)}; }},
      {4, "1-KDCC sum1, n=3..7: size >= 4^n/4, disjoint, roundtrip", 60,
       [] { return range(3, 7, [](int n) { return verify::kdcc_exhaustive(kdcc::Family::sum1, n); }); }},
      {5, "1-KDCC svt1, n=4..7: size >= 4^n/10, roundtrip", 60,
       [] { return range(4, 7, [](int n) { return verify::kdcc_exhaustive(kdcc::Family::svt1, n); }); }},
      {6, "array code, n=8..12, P<=3: erasures, bounded deletions, D != 0, redundancy", 0,
       [] { return std::vector{verify::array_code(8, 12, 3)}; }},
      {7, "2-KDCC, n=24, 1000 strands x all |D|=2 in cycle(x), zero failures", 120,
       [] { return std::vector{verify::kdcc_sampled(kdcc::Family::array2, 24, 1000, kSeed)}; }},
      {8, "E code n=10 rho=4 both regimes, budget; prefix code k=8 two and one deletion", 0,
       [] { return std::vector{verify::ecode_audit(10, 2, 2), verify::prefix_audit(8, 2, 2)}; }},
      {9, "cover selection, n in {16,32,64}, 200 sets, contraction <= 3/4", 30,
       [] { return std::vector{verify::cover_selection({16, 32, 64}, 200, kSeed)}; }},
      {10, "1-SDCC n=16 M=8 every delta; toy ball disjointness", 120,
       [] {
         return std::vector{verify::sdcc_roundtrip(1, {16, 8, 1}, 20, kSeed, true), verify::sdcc_toy(1, 6, 6, kSeed)};
       }},
      {11, "C2D n=24, 200 members plus forced alternating, all deletion pairs", 120,
       [] { return std::vector{verify::c2d_roundtrip(24, 200, 50, kSeed)}; }},
      {12, "2-SDCC n=32 M=12 stratified |D|<=2; toy ball disjointness", 300,
       [] {
         return std::vector{verify::sdcc_roundtrip(2, {32, 12, 1}, 500, kSeed, false), verify::sdcc_toy(2, 6, 6, kSeed)};
       }},
      {13, "bounds: cover_size(5)=1012, verify_cover n=5,6, codebooks <= cover, log 4 - o(1)", 0,
       [] { return std::vector{verify::bounds_check({5, 6}, {5, 6, 7})}; }},
  };

  int failed = 0;
  for (const auto& cr : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    auto checks = cr.run();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = true;
    for (const auto& c : checks) ok = ok && c.pass;
    bool in_time = cr.budget_seconds == 0 || secs < cr.budget_seconds;
    std::printf("%s criterion %2d: %s (%.1fs%s)\n", ok && in_time ? "PASS" : "FAIL", cr.id, cr.title, secs,
                in_time ? "" : ", over time budget");
    for (const auto& c : checks) std::printf("    %s\n", brief(c).c_str());
    std::fflush(stdout);
    failed += !(ok && in_time);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
