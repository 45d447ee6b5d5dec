#pragma once

// Acceptance suite shared by the CLI `validate` command and the test binary.

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace willmore::validation {

enum class Scale { Quick, Full };

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 9;

/// Pinned tolerances.
inline constexpr double kTauReference = 0.1987553;
inline constexpr double kTauTolerance = 1e-4;
inline constexpr double kTauSeconds = 1.0;
inline constexpr double kGaussBonnetTolerance = 1e-6;
inline constexpr double kGaussBonnetSeconds = 10.0;
inline constexpr double kMaxSystoleTolerance = 0.083;
inline constexpr double kCliffordTolerance = 5e-3;
inline constexpr double kRevolutionTolerance = 1e-8;
inline constexpr double kConeCurvatureTolerance = 0.02;
inline constexpr double kFamilyVariation = 0.03;
inline constexpr double kFamilyGrowth = 8.0;
inline constexpr double kSigmaSlack = 1e-12;
inline constexpr double kParsevalTolerance = 1e-6;

/// Runs one criterion (1..kCriterionCount). Throws std::out_of_range for an
/// unknown id. Exceptions inside a criterion are reported as failures.
CriterionResult run_criterion(int id, Scale scale);

/// Runs all criteria in order, reporting each result as it completes.
/// Criteria 3 and 5 share one corpus.
std::vector<CriterionResult> run_all(
    Scale scale, const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS  3  oscillation bounds: <detail> (1.23 s)"
std::string format_line(const CriterionResult& r);

void to_json(nlohmann::json& j, const CriterionResult& r);

}  // namespace willmore::validation
