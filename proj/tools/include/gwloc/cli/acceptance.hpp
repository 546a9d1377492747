#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gwloc::cli {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  /// Failing sub-checks, or a short summary when everything passed.
  std::string detail;
  double seconds = 0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 1;
  unsigned workers = 0;
  /// Optional Hodge table; enables the genus-two partition-sum check.
  std::string hodge_table_path;
};

/// Runs every acceptance criterion in order, reporting each as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& report = {});

/// "[PASS] 3  title  (detail)" style line.
std::string format_result(const CriterionResult& result);

}  // namespace gwloc::cli
