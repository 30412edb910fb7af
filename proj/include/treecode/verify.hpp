#pragma once

#include <string>
#include <vector>

namespace treecode::verify {

// One acceptance criterion, pinned tolerances and seeds included.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// Machine-readable one-line form: "PASS  3 type-counts  <detail>"
std::string format_line(const CriterionResult& r);

const std::vector<std::string>& suite_names();

// Runs one named suite (unknown name throws std::invalid_argument).
std::vector<CriterionResult> run_suite(const std::string& suite);

// All twelve criteria in order.
std::vector<CriterionResult> run_all();

}  // namespace treecode::verify
