#pragma once

// The acceptance criteria as runnable checks. Each one measures, compares
// against its threshold and reports; nothing here throws on a failed check.

#include <string>
#include <vector>

#include "bloch/quad.hpp"
#include "bloch/report.hpp"

namespace bloch {

struct CriterionReport {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string measured;
  std::string expected;
  double seconds = 0.0;
  std::vector<CsvRow> rows;
};

inline constexpr int kCriterionCount = 8;

/// Runs criterion `id` (1..8) at the given spec (J = 14 by default).
CriterionReport run_criterion(int id, const QuadratureSpec& spec = {});

/// "lemmas" -> 2 3 4, "theorem" -> 1 5 6, "counterexample" -> 7, "norms" -> 8,
/// "all" -> 1..8. Throws std::invalid_argument for other names.
std::vector<int> suite_criteria(const std::string& name);

/// "PASS  [3] Lemma 2 ... | measured ... | expected ... | 4.2 s"
std::string format_report(const CriterionReport& r);

}  // namespace bloch
