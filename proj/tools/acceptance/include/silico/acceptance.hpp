#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace silico::acceptance {

struct Settings {
  std::uint64_t seed = 20240611;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool checks_passed = true;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::vector<std::string> details;

  [[nodiscard]] bool passed() const {
    return checks_passed && seconds < budget_seconds;
  }
};

inline constexpr int kCriterionCount = 10;

/// Runs criterion `id` (1..10) and times it against its budget.
CriterionResult run_criterion(int id, const Settings& settings = {});

std::vector<CriterionResult> run_all(const Settings& settings = {});

/// "[PASS] criterion 3 (0.41 s / 30 s): exact multiplicity ..."
std::string summary_line(const CriterionResult& result);

}  // namespace silico::acceptance
