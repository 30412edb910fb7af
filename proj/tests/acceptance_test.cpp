// Acceptance suite: runs every criterion at its pinned tolerance and prints
// one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cstdio>

#include "treecode/verify.hpp"

int main() {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const auto results = treecode::verify::run_all();
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("%s\n", treecode::verify::format_line(r).c_str());
    std::fflush(stdout);
    all_pass = all_pass && r.pass;
  }
  const auto secs =
      std::chrono::duration_cast<std::chrono::seconds>(clock::now() - t0).count();
  std::printf("%s (%d criteria, %llds)\n", all_pass ? "ALL PASS" : "FAILURES",
              static_cast<int>(results.size()), static_cast<long long>(secs));
  return all_pass ? 0 : 1;
}
