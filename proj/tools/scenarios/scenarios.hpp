#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace horseshoe::scenarios {

struct ScenarioOptions {
  std::size_t workers = 4;
  /// Random inputs for the schedule-language fuzz run.
  std::size_t fuzz_inputs = 100'000;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  /// One line of the key numbers behind the verdict.
  std::string detail;
  std::vector<std::pair<std::string, double>> values;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 13;

CriterionResult run_criterion(int id, const ScenarioOptions& options = {});

/// Example ids accepted by the reproduce command.
const std::vector<std::string>& example_ids();
/// Criteria exercised by one example; throws unknown_id.
std::vector<int> criteria_for_example(std::string_view example_id);

/// JSON document with every measured number and a verdict per criterion.
std::string results_json(std::string_view example_id, const std::vector<CriterionResult>& results,
                         const ScenarioOptions& options);

struct GallerySpec {
  std::string gallery;
  std::string text;
};

/// Schedule-language sources for the gallery families.
const std::vector<GallerySpec>& gallery_specs();

}  // namespace horseshoe::scenarios
