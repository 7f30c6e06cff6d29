#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sldp::verify {

/// One acceptance criterion's outcome.
struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = false;
  /// One line per sub-check, "ok" or "FAIL" first.
  std::vector<std::string> checks;
  nlohmann::ordered_json measurements = nlohmann::ordered_json::object();
  double seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 20170601;
  /// Multiplies every tolerance; values below one tighten the suite and are
  /// used to check that a corrupted tolerance makes the run fail.
  double tolerance_scale = 1.0;
  /// Subset of criterion IDs; empty runs all of them.
  std::vector<std::string> only;
  /// Called after each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

/// Every criterion ID, in order.
std::vector<std::string> criterion_ids();
std::string criterion_title(const std::string& id);

/// Runs the selected criteria. Throws DomainError for an unknown ID.
std::vector<CriterionResult> run_criteria(const VerifyOptions& opts);

nlohmann::ordered_json report_json(const std::vector<CriterionResult>& results,
                                   const VerifyOptions& opts);

/// "AC1 PASS  title  (12.3 s)" followed by indented sub-check lines.
std::string format_result(const CriterionResult& r);

}  // namespace sldp::verify
