#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fuzzy {

struct CriterionResult {
  int id = 0;
  std::string suite;
  std::string title;
  bool passed = false;
  std::string detail;
};

struct SymmetryRecord {
  std::string transform;
  std::string system;
  bool invariant = false;
  double deviation = 0.0;
};

struct VerifyReport {
  std::vector<CriterionResult> criteria;
  std::vector<SymmetryRecord> symmetry;

  bool all_passed() const;
  std::vector<int> failed_ids() const;
};

/// Suites: all, moments, fock, states, symmetry, dispersion, limits.
std::vector<std::string> verify_suites();

VerifyReport run_verification(std::string_view suite);

/// "[PASS] AC01 moments  title | detail"
std::string format_line(const CriterionResult& r);

}  // namespace fuzzy
