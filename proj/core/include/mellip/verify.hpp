#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mellip {

// The acceptance suite: ten quantitative checks of the shipped pipelines
// against independent oracles (Monte-Carlo, quadrature, exhaustive search).
// Tolerances and thresholds are pinned here; `quick` reduces sample and
// instance counts for smoke runs without touching any tolerance.
struct AcceptanceOptions {
  bool quick = false;
  std::vector<int> criteria;  // empty selects all of 1..10
};

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
};

// Runs the selected criteria, streaming one PASS/FAIL line each to
// `progress` when given. Returns per-criterion results in id order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            std::ostream* progress = nullptr);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace mellip
